//! One-polygon presentations of connected surfaces with boundary.
//!
//! The polygon's sides are read counterclockwise. Corner `q` is the start
//! point of side `q`. Paired sides are glued orientably; free sides form the
//! boundary.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::surface::{BoundaryCircle, ConnectedSurface};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SideKind {
    Free,
    Paired { inverse: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    pub label: String,
    pub kind: SideKind,
}

impl Side {
    pub fn free(label: impl Into<String>) -> Self {
        Side {
            label: label.into(),
            kind: SideKind::Free,
        }
    }

    pub fn paired(label: impl Into<String>, inverse: bool) -> Self {
        Side {
            label: label.into(),
            kind: SideKind::Paired { inverse },
        }
    }

    pub fn is_free(&self) -> bool {
        self.kind == SideKind::Free
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SideKind::Paired { inverse: true } => write!(f, "{}^-1", self.label),
            _ => write!(f, "{}", self.label),
        }
    }
}

/// A boundary circle traced through the free sides of the polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct TracedCircle {
    /// Free side indices in boundary order, starting at a stop when there is one.
    pub sides: Vec<usize>,
    /// Segment index of each entry of `sides`.
    pub segment_of: Vec<usize>,
    pub stops: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonPresentation {
    sides: Vec<Side>,
    corner_vertex: Vec<usize>,
    vertex_count: usize,
    stop_vertex: Vec<bool>,
    /// label -> (forward position, inverse position)
    pairs: BTreeMap<String, (usize, usize)>,
    /// free side ending at each vertex, if the vertex is on the boundary
    in_germ: Vec<Option<usize>>,
    circles: Vec<TracedCircle>,
    /// free side -> (circle, segment)
    side_location: Vec<Option<(usize, usize)>>,
    genus: usize,
}

impl PolygonPresentation {
    /// Validates the word and traces corners and boundary circles.
    /// `stop_corners` lists corners whose vertices are stops.
    pub fn new(sides: Vec<Side>, stop_corners: &BTreeSet<usize>) -> Result<Self> {
        let n = sides.len();
        if n == 0 {
            return Err(Error::Pairing("empty word".into()));
        }
        let mut pairs: BTreeMap<String, (Option<usize>, Option<usize>)> = BTreeMap::new();
        let mut free_labels = BTreeSet::new();
        for (q, side) in sides.iter().enumerate() {
            match side.kind {
                SideKind::Free => {
                    if !free_labels.insert(side.label.as_str()) {
                        return Err(Error::Pairing(format!("free label {} repeated", side.label)));
                    }
                }
                SideKind::Paired { inverse } => {
                    let slot = pairs.entry(side.label.clone()).or_default();
                    let target = if inverse { &mut slot.1 } else { &mut slot.0 };
                    if target.replace(q).is_some() {
                        return Err(Error::Pairing(format!(
                            "label {} appears twice with the same orientation",
                            side.label
                        )));
                    }
                }
            }
        }
        if free_labels.iter().any(|l| pairs.contains_key(*l)) {
            return Err(Error::Pairing("label used as both free and paired".into()));
        }
        let pairs: BTreeMap<String, (usize, usize)> = pairs
            .into_iter()
            .map(|(label, (f, i))| match (f, i) {
                (Some(f), Some(i)) => Ok((label, (f, i))),
                _ => Err(Error::Pairing(format!("label {label} is not matched"))),
            })
            .collect::<Result<_>>()?;
        if free_labels.is_empty() {
            return Err(Error::Pairing("word has no free sides".into()));
        }
        if let Some(&c) = stop_corners.iter().find(|&&c| c >= n) {
            return Err(Error::OutOfRange(format!("stop corner {c} of a {n}-gon")));
        }

        // corner tracing
        let mut uf = UnionFind::new(n);
        for &(f, i) in pairs.values() {
            uf.union(f, (i + 1) % n);
            uf.union((f + 1) % n, i);
        }
        let mut ids = BTreeMap::new();
        let corner_vertex: Vec<usize> = (0..n)
            .map(|q| {
                let r = uf.find(q);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect();
        let vertex_count = ids.len();

        let start = |q: usize| corner_vertex[q];
        let end = |q: usize| corner_vertex[(q + 1) % n];
        let mut out_germ = vec![None; vertex_count];
        let mut in_germ = vec![None; vertex_count];
        for (q, side) in sides.iter().enumerate() {
            if !side.is_free() {
                continue;
            }
            if out_germ[start(q)].replace(q).is_some() || in_germ[end(q)].replace(q).is_some() {
                return Err(Error::Pairing(format!(
                    "boundary pinches at the vertex of side {}",
                    side.label
                )));
            }
        }
        let mut stop_vertex = vec![false; vertex_count];
        for &c in stop_corners {
            let v = corner_vertex[c];
            if in_germ[v].is_none() {
                return Err(Error::Pairing(format!("stop corner {c} is an interior vertex")));
            }
            stop_vertex[v] = true;
        }

        // boundary circles, in order of first appearance
        let mut side_location = vec![None; n];
        let mut circles = Vec::new();
        for q0 in 0..n {
            if !sides[q0].is_free() || side_location[q0].is_some() {
                continue;
            }
            let mut cycle = vec![q0];
            let mut q = out_germ[end(q0)].expect("free sides chain around the boundary");
            while q != q0 {
                cycle.push(q);
                q = out_germ[end(q)].expect("free sides chain around the boundary");
            }
            let first_stop = cycle
                .iter()
                .enumerate()
                .filter(|(_, &q)| stop_vertex[start(q)])
                .min_by_key(|(_, &q)| q)
                .map(|(k, _)| k);
            if let Some(k) = first_stop {
                cycle.rotate_left(k);
            }
            let mut segment_of = Vec::with_capacity(cycle.len());
            let mut seg = 0usize;
            let mut stops = 0;
            for (k, &q) in cycle.iter().enumerate() {
                if stop_vertex[start(q)] {
                    stops += 1;
                    if k > 0 {
                        seg += 1;
                    }
                }
                segment_of.push(seg);
            }
            let ci = circles.len();
            for (&q, &s) in cycle.iter().zip(&segment_of) {
                side_location[q] = Some((ci, s));
            }
            circles.push(TracedCircle {
                sides: cycle,
                segment_of,
                stops,
            });
        }

        let edges = pairs.len() + free_labels.len();
        let chi = vertex_count as i64 - edges as i64 + 1;
        let twice_genus = 2 - chi - circles.len() as i64;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::Invariant(format!(
                "corner tracing gives chi = {chi} with {} circles",
                circles.len()
            )));
        }

        Ok(PolygonPresentation {
            sides,
            corner_vertex,
            vertex_count,
            stop_vertex,
            pairs,
            in_germ,
            circles,
            side_location,
            genus: (twice_genus / 2) as usize,
        })
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn corner_vertex(&self, corner: usize) -> usize {
        self.corner_vertex[corner % self.sides.len()]
    }

    pub fn start_vertex(&self, side: usize) -> usize {
        self.corner_vertex(side)
    }

    pub fn end_vertex(&self, side: usize) -> usize {
        self.corner_vertex(side + 1)
    }

    pub fn is_stop(&self, vertex: usize) -> bool {
        self.stop_vertex[vertex]
    }

    /// Paired labels with their (forward, inverse) positions.
    pub fn pairs(&self) -> &BTreeMap<String, (usize, usize)> {
        &self.pairs
    }

    /// Paired labels in order of first appearance in the word.
    pub fn pair_labels(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        self.sides
            .iter()
            .filter(|s| !s.is_free() && seen.insert(s.label.as_str()))
            .map(|s| s.label.as_str())
            .collect()
    }

    pub fn free_sides(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.sides.len()).filter(|&q| self.sides[q].is_free())
    }

    /// The free side ending at `vertex`, `None` for interior vertices.
    pub fn in_germ(&self, vertex: usize) -> Option<usize> {
        self.in_germ[vertex]
    }

    pub fn all_vertices_on_boundary(&self) -> bool {
        self.in_germ.iter().all(Option::is_some)
    }

    /// (circle, segment) of a free side.
    pub fn side_location(&self, side: usize) -> Option<(usize, usize)> {
        self.side_location[side]
    }

    pub fn circle_stops(&self) -> Vec<usize> {
        self.circles.iter().map(|c| c.stops).collect()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// The connected surface this presentation describes.
    pub fn surface(&self) -> ConnectedSurface {
        ConnectedSurface {
            genus: self.genus,
            boundary: self.circles.iter().map(|c| BoundaryCircle { stops: c.stops }).collect(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        let edges = self.pairs.len() + self.free_sides().count();
        self.vertex_count as i64 - edges as i64 + 1
    }

    pub fn word(&self) -> String {
        self.sides.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for PolygonPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

/// The standard word `c_1 . [a_1,b_1] ... [a_g,b_g] . t_2 c_2 t_2^-1 ... t_b c_b t_b^-1`
/// where `c_j` is a run of `max(s_j, 1)` free sides. Every corner that starts a
/// free side on a stopped circle is a stop.
pub fn canonical_presentation(surface: &ConnectedSurface) -> Result<PolygonPresentation> {
    if surface.boundary.is_empty() {
        return Err(Error::EmptyBoundary(0));
    }
    let mut sides = Vec::new();
    let mut stops = BTreeSet::new();
    let mut push_circle = |sides: &mut Vec<Side>, j: usize, s: usize| {
        for k in 0..s.max(1) {
            if s > 0 {
                stops.insert(sides.len());
            }
            sides.push(Side::free(format!("c{}.{}", j + 1, k + 1)));
        }
    };
    push_circle(&mut sides, 0, surface.boundary[0].stops);
    for i in 1..=surface.genus {
        let (a, b) = (format!("a{i}"), format!("b{i}"));
        sides.push(Side::paired(&a, false));
        sides.push(Side::paired(&b, false));
        sides.push(Side::paired(a, true));
        sides.push(Side::paired(b, true));
    }
    for (j, circle) in surface.boundary.iter().enumerate().skip(1) {
        let t = format!("t{}", j + 1);
        sides.push(Side::paired(&t, false));
        push_circle(&mut sides, j, circle.stops);
        sides.push(Side::paired(t, true));
    }
    let p = PolygonPresentation::new(sides, &stops)?;
    debug_assert_eq!(&p.surface(), surface);
    Ok(p)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(g: usize, stops: &[usize]) -> PolygonPresentation {
        canonical_presentation(&ConnectedSurface::new(g, stops)).unwrap()
    }

    #[test]
    fn disk_with_one_stop() {
        let p = word(0, &[1]);
        assert_eq!(p.word(), "c1.1");
        assert!(p.pairs().is_empty());
        assert_eq!(p.euler_characteristic(), 1);
    }

    #[test]
    fn cylinder_word() {
        let p = word(0, &[0, 0]);
        assert_eq!(p.word(), "c1.1 t2 c2.1 t2^-1");
        assert_eq!(p.pairs().len(), 1);
        assert_eq!(p.euler_characteristic(), 0);
        assert_eq!(p.circle_stops(), vec![0, 0]);
    }

    #[test]
    fn one_holed_torus_word() {
        let p = word(1, &[1]);
        assert_eq!(p.word(), "c1.1 a1 b1 a1^-1 b1^-1");
        assert_eq!(p.euler_characteristic(), -1);
        assert_eq!(p.vertex_count(), 1);
    }

    #[test]
    fn pairs_number_two_g_plus_b_minus_one() {
        for g in 0..3 {
            for b in 1..4 {
                let p = word(g, &vec![2; b]);
                assert_eq!(p.pairs().len(), 2 * g + b - 1);
                assert_eq!(p.surface(), ConnectedSurface::new(g, &vec![2; b]));
            }
        }
    }

    #[test]
    fn stops_land_on_their_circles() {
        let p = word(1, &[3, 0, 2]);
        assert_eq!(p.circle_stops(), vec![3, 0, 2]);
        let stops: usize = (0..p.vertex_count()).filter(|&v| p.is_stop(v)).count();
        assert_eq!(stops, 5);
        assert!(p.all_vertices_on_boundary());
    }

    #[test]
    fn hand_built_presentations() {
        // an annulus written as c1 x c2 x^-1 with one stop on each circle
        let sides = vec![
            Side::free("c1"),
            Side::paired("x", false),
            Side::free("c2"),
            Side::paired("x", true),
        ];
        let p = PolygonPresentation::new(sides, &[0, 2].into()).unwrap();
        assert_eq!(p.surface(), ConnectedSurface::new(0, &[1, 1]));
    }

    #[test]
    fn inconsistent_pairings() {
        let same = vec![Side::free("c"), Side::paired("x", false), Side::paired("x", false)];
        assert!(matches!(
            PolygonPresentation::new(same, &BTreeSet::new()),
            Err(Error::Pairing(_))
        ));
        let single = vec![Side::free("c"), Side::paired("x", false)];
        assert!(matches!(
            PolygonPresentation::new(single, &BTreeSet::new()),
            Err(Error::Pairing(_))
        ));
        let closed = vec![
            Side::paired("a", false),
            Side::paired("b", false),
            Side::paired("a", true),
            Side::paired("b", true),
        ];
        assert!(matches!(
            PolygonPresentation::new(closed, &BTreeSet::new()),
            Err(Error::Pairing(_))
        ));
    }

    #[test]
    fn empty_boundary_is_an_error() {
        assert_eq!(
            canonical_presentation(&ConnectedSurface::new(1, &[])).unwrap_err(),
            Error::EmptyBoundary(0)
        );
    }
}
