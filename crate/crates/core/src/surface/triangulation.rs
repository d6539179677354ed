//! Triangulations of a stopped disk, modeled as diagonal triangulations of the
//! convex polygon whose vertices are the stops.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    sides: usize,
    diagonals: BTreeSet<(usize, usize)>,
}

fn normalize(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let inside = |x: usize| a < x && x < b;
    let shared = a == c || a == d || b == c || b == d;
    !shared && inside(c) != inside(d)
}

impl Triangulation {
    pub fn new(sides: usize, diagonals: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if sides < 3 {
            return Err(Error::PolygonTooSmall(sides));
        }
        let mut set = BTreeSet::new();
        for (a, b) in diagonals {
            let d = normalize(a, b);
            if d.1 >= sides {
                return Err(Error::OutOfRange(format!("vertex {} of a {sides}-gon", d.1)));
            }
            if d.1 - d.0 < 2 || (d.0 == 0 && d.1 == sides - 1) {
                return Err(Error::NotADiagonal(a, b));
            }
            set.insert(d);
        }
        if set.len() != sides - 3 {
            return Err(Error::Invariant(format!(
                "{} diagonals in a {sides}-gon, expected {}",
                set.len(),
                sides - 3
            )));
        }
        for &x in &set {
            for &y in &set {
                if crosses(x, y) {
                    return Err(Error::Invariant(format!("diagonals {x:?} and {y:?} cross")));
                }
            }
        }
        Ok(Triangulation { sides, diagonals: set })
    }

    /// All diagonals from `apex`.
    pub fn fan(sides: usize, apex: usize) -> Result<Self> {
        if sides < 3 {
            return Err(Error::PolygonTooSmall(sides));
        }
        let apex = apex % sides;
        Self::new(sides, (2..sides - 1).map(|k| (apex, (apex + k) % sides)))
    }

    pub fn sides(&self) -> usize {
        self.sides
    }

    pub fn diagonals(&self) -> &BTreeSet<(usize, usize)> {
        &self.diagonals
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.diagonals.contains(&normalize(a, b))
    }

    fn joined(&self, a: usize, b: usize) -> bool {
        let (a, b) = normalize(a, b);
        b - a == 1 || (a == 0 && b == self.sides - 1) || self.diagonals.contains(&(a, b))
    }

    /// Triangles as sorted vertex triples.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let n = self.sides;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if self.joined(a, b) && self.joined(b, c) && self.joined(a, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }
}

/// Replaces a diagonal by the other diagonal of the quadrilateral around it.
pub fn flip(t: &Triangulation, diagonal: (usize, usize)) -> Result<Triangulation> {
    let (a, b) = normalize(diagonal.0, diagonal.1);
    if !t.diagonals.contains(&(a, b)) {
        return Err(Error::NotADiagonal(diagonal.0, diagonal.1));
    }
    let apex = |mut range: Box<dyn Iterator<Item = usize>>| {
        range
            .find(|&k| t.joined(a, k) && t.joined(k, b))
            .expect("a diagonal borders two triangles")
    };
    let inner = apex(Box::new(a + 1..b));
    let outer = apex(Box::new((b + 1..t.sides).chain(0..a)));
    let mut diagonals = t.diagonals.clone();
    diagonals.remove(&(a, b));
    diagonals.insert(normalize(inner, outer));
    Ok(Triangulation {
        sides: t.sides,
        diagonals,
    })
}

fn all_triangulations(sides: usize) -> Vec<Triangulation> {
    // triangulations of the sub-polygon on vertices lo..=hi
    type Chords = Vec<Vec<(usize, usize)>>;
    fn rec(lo: usize, hi: usize, memo: &mut BTreeMap<(usize, usize), Chords>) -> Chords {
        if hi - lo < 2 {
            return vec![Vec::new()];
        }
        if let Some(v) = memo.get(&(lo, hi)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for k in lo + 1..hi {
            let left = rec(lo, k, memo);
            let right = rec(k, hi, memo);
            for l in &left {
                for r in &right {
                    let mut d = l.clone();
                    d.extend(r);
                    if k - lo >= 2 {
                        d.push((lo, k));
                    }
                    if hi - k >= 2 {
                        d.push((k, hi));
                    }
                    out.push(d);
                }
            }
        }
        memo.insert((lo, hi), out.clone());
        out
    }
    let mut memo = BTreeMap::new();
    let mut all: Vec<Triangulation> = rec(0, sides - 1, &mut memo)
        .into_iter()
        .map(|d| Triangulation {
            sides,
            diagonals: d.into_iter().collect(),
        })
        .collect();
    all.sort();
    all
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipGraph {
    pub sides: usize,
    pub vertices: Vec<Triangulation>,
    /// index pairs (i < j)
    pub edges: Vec<(usize, usize)>,
}

pub fn flip_graph(sides: usize) -> Result<FlipGraph> {
    if sides < 3 {
        return Err(Error::PolygonTooSmall(sides));
    }
    let vertices = all_triangulations(sides);
    let index: BTreeMap<&Triangulation, usize> = vertices.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges = BTreeSet::new();
    for (i, t) in vertices.iter().enumerate() {
        for &d in &t.diagonals {
            let j = index[&flip(t, d)?];
            edges.insert((i.min(j), i.max(j)));
        }
    }
    Ok(FlipGraph {
        sides,
        vertices,
        edges: edges.into_iter().collect(),
    })
}

pub fn catalan(n: usize) -> u64 {
    (0..n).fold(1u64, |c, k| c * 2 * (2 * k as u64 + 1) / (k as u64 + 2))
}

impl FlipGraph {
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Connected, at least three vertices, every degree 2.
    pub fn is_cycle(&self) -> bool {
        self.vertices.len() >= 3
            && self.edges.len() == self.vertices.len()
            && (0..self.vertices.len()).all(|v| self.neighbors(v).len() == 2)
            && self.is_connected()
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph flips_{} {{\n", self.sides);
        for (i, t) in self.vertices.iter().enumerate() {
            let label: Vec<String> = t.diagonals.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            writeln!(out, "  t{i} [label=\"{}\"];", label.join(" ")).unwrap();
        }
        for (a, b) in &self.edges {
            writeln!(out, "  t{a} -- t{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn summary(&self) -> String {
        let (v, e) = (self.vertices.len(), self.edges.len());
        let mut parts = vec![
            format!("{v} vertex{}", if v == 1 { "" } else { "es" }).replace("vertexes", "vertices"),
            format!("{e} edge{}", if e == 1 { "" } else { "s" }),
        ];
        parts.push(
            if self.is_connected() {
                "connected"
            } else {
                "disconnected"
            }
            .into(),
        );
        if self.is_cycle() {
            parts.push("cycle".into());
        }
        parts.join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_flip() {
        let t = Triangulation::new(4, [(0, 2)]).unwrap();
        let u = flip(&t, (0, 2)).unwrap();
        assert!(u.contains(1, 3));
        assert_eq!(flip(&u, (1, 3)).unwrap(), t);
        assert_eq!(flip(&t, (1, 3)).unwrap_err(), Error::NotADiagonal(1, 3));
    }

    #[test]
    fn small_graphs() {
        let g3 = flip_graph(3).unwrap();
        assert_eq!((g3.vertices.len(), g3.edges.len()), (1, 0));
        let g4 = flip_graph(4).unwrap();
        assert_eq!((g4.vertices.len(), g4.edges.len()), (2, 1));
        let g5 = flip_graph(5).unwrap();
        assert_eq!(g5.vertices.len(), 5);
        assert!(g5.is_cycle());
        assert_eq!(g5.summary(), "5 vertices, 5 edges, connected, cycle");
        assert_eq!(flip_graph(2).unwrap_err(), Error::PolygonTooSmall(2));
    }

    #[test]
    fn catalan_counts() {
        assert_eq!((0..8).map(catalan).collect::<Vec<_>>(), [1, 1, 2, 5, 14, 42, 132, 429]);
        for s in 3..=9 {
            let g = flip_graph(s).unwrap();
            assert_eq!(g.vertices.len() as u64, catalan(s - 2));
            assert!(g.is_connected());
            // every triangulation has s - 3 flips
            assert_eq!(g.edges.len(), g.vertices.len() * (s - 3) / 2);
        }
    }

    #[test]
    fn triangles_and_fans() {
        let t = Triangulation::fan(6, 0).unwrap();
        assert_eq!(t.triangles().len(), 4);
        assert!(Triangulation::new(5, [(0, 2), (1, 3)]).is_err());
    }
}
