//! Arcs, arc systems and cutting.
//!
//! Arcs live on the canonical cut-open polygon. The *rim* is the boundary of
//! that polygon read counterclockwise, reduced to the items that matter for
//! cutting: paired sides and stops. Between two consecutive items lies a gap,
//! a piece of `dS - f`; gap `i` is the one just before item `i`.
//!
//! Two kinds of arcs exist:
//! * a side arc follows a paired side, with both ends pushed off the vertex
//!   along the boundary side that runs into that vertex;
//! * a chord joins two gaps inside the polygon.
//!
//! Cutting along a set of arcs splits the polygon along its chords into
//! regions and re-glues every paired side whose arc is not in the set. Gluing
//! two regions along an interval lowers the Euler characteristic by one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::matrix::IntMatrix;
use crate::surface::complex::CellComplex;
use crate::surface::presentation::{canonical_presentation, PolygonPresentation, SideKind, UnionFind};
use crate::surface::ConnectedSurface;

/// A point of `dS - f`, named by its circle and the segment between two
/// consecutive stops (segment `k` runs from stop `k` to stop `k + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BoundaryPoint {
    pub circle: usize,
    pub segment: usize,
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.circle, self.segment)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RimItem {
    Side {
        side: usize,
        label: String,
        inverse: bool,
    },
    Stop {
        side: usize,
        vertex: usize,
        circle: usize,
        index: usize,
    },
}

impl RimItem {
    fn side(&self) -> usize {
        match self {
            RimItem::Side { side, .. } | RimItem::Stop { side, .. } => *side,
        }
    }
}

/// A position on the rim: either a gap or an item.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RimPoint {
    /// The gap just before item `i`.
    Gap(usize),
    /// On item `i` itself. Never a valid arc endpoint.
    Item(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ArcRoute {
    Side(String),
    Chord(RimPoint, RimPoint),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub route: ArcRoute,
}

impl Arc {
    pub fn side(label: impl Into<String>) -> Self {
        Arc {
            route: ArcRoute::Side(label.into()),
        }
    }

    pub fn chord(from: usize, to: usize) -> Self {
        Arc {
            route: ArcRoute::Chord(RimPoint::Gap(from), RimPoint::Gap(to)),
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.route {
            ArcRoute::Side(label) => write!(f, "{label}"),
            ArcRoute::Chord(a, b) => {
                let show = |p: &RimPoint| match p {
                    RimPoint::Gap(i) => format!("g{i}"),
                    RimPoint::Item(i) => format!("i{i}"),
                };
                write!(f, "[{}-{}]", show(a), show(b))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rim {
    items: Vec<RimItem>,
    gap_location: Vec<BoundaryPoint>,
}

impl Rim {
    pub fn new(p: &PolygonPresentation) -> Result<Self> {
        if !p.all_vertices_on_boundary() {
            return Err(Error::Invariant(
                "arcs need every polygon vertex on the boundary".into(),
            ));
        }
        let mut items = Vec::new();
        let mut gap_location = Vec::new();
        for (q, side) in p.sides().iter().enumerate() {
            let item = match side.kind {
                SideKind::Paired { inverse } => RimItem::Side {
                    side: q,
                    label: side.label.clone(),
                    inverse,
                },
                SideKind::Free => {
                    let v = p.start_vertex(q);
                    if !p.is_stop(v) {
                        continue;
                    }
                    let (circle, index) = p.side_location(q).expect("free side on a circle");
                    RimItem::Stop {
                        side: q,
                        vertex: v,
                        circle,
                        index,
                    }
                }
            };
            items.push(item);
            gap_location.push(location_before_corner(p, q));
        }
        Ok(Rim { items, gap_location })
    }

    pub fn items(&self) -> &[RimItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Where on the boundary gap `i` lies.
    pub fn gap_location(&self, i: usize) -> BoundaryPoint {
        self.gap_location[i]
    }

    /// Rim indices of the stops, in rim order.
    pub fn stop_items(&self) -> Vec<usize> {
        (0..self.items.len())
            .filter(|&i| matches!(self.items[i], RimItem::Stop { .. }))
            .collect()
    }

    fn gap(&self, p: RimPoint) -> Result<usize> {
        match p {
            RimPoint::Gap(i) if i < self.items.len() => Ok(i),
            RimPoint::Gap(i) => Err(Error::OutOfRange(format!("gap {i} of {}", self.items.len()))),
            RimPoint::Item(i) => match self.items.get(i) {
                Some(RimItem::Stop { .. }) => Err(Error::EndpointOnStop(i)),
                Some(RimItem::Side { .. }) => Err(Error::EndpointOnArc(i)),
                None => Err(Error::OutOfRange(format!("item {i} of {}", self.items.len()))),
            },
        }
    }
}

/// Boundary location of the corner just before side `q`, approached along the
/// free side that runs into its vertex.
fn location_before_corner(p: &PolygonPresentation, q: usize) -> BoundaryPoint {
    let germ = p.in_germ(p.start_vertex(q)).expect("every vertex is on the boundary");
    let (circle, segment) = p.side_location(germ).expect("free side on a circle");
    BoundaryPoint { circle, segment }
}

/// One connected piece left after cutting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub euler: i64,
    pub stops: usize,
    pub boundary_components: usize,
    pub genus: usize,
}

impl Piece {
    pub fn is_disk(&self) -> bool {
        self.euler == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum RegionSide {
    Paired { label: String, inverse: bool },
    Chord { arc: usize, forward: bool },
}

#[derive(Clone, Debug, Default)]
struct Region {
    sides: Vec<RegionSide>,
    /// stops in the gap after each side
    stops: Vec<usize>,
    stop_items: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Decomposition {
    regions: Vec<Region>,
    piece_of: Vec<usize>,
    pieces: Vec<Piece>,
}

fn decompose(p: &PolygonPresentation, arcs: &[Arc]) -> Result<(Rim, Decomposition)> {
    let rim = Rim::new(p)?;
    let t = rim.len();

    let mut cut_labels = BTreeSet::new();
    let mut chords: Vec<(usize, [usize; 2])> = Vec::new();
    let mut seen_chords = BTreeSet::new();
    for (ai, arc) in arcs.iter().enumerate() {
        match &arc.route {
            ArcRoute::Side(label) => {
                if !p.pairs().contains_key(label) {
                    return Err(Error::DegenerateArc(format!("no paired side {label}")));
                }
                if !cut_labels.insert(label.clone()) {
                    return Err(Error::DegenerateArc(format!("side arc {label} given twice")));
                }
            }
            ArcRoute::Chord(a, b) => {
                let (ga, gb) = (rim.gap(*a)?, rim.gap(*b)?);
                if ga == gb {
                    return Err(Error::DegenerateArc(format!("chord {arc} has both ends in one gap")));
                }
                if !seen_chords.insert((ga.min(gb), ga.max(gb))) {
                    return Err(Error::DegenerateArc(format!("chord {arc} given twice")));
                }
                chords.push((ai, [ga, gb]));
            }
        }
    }

    // tokens around the rim: chord ends sorted inside each gap, then the item
    #[derive(Clone, Copy)]
    enum Token {
        End(usize, usize),
        Item(usize),
    }
    let mut per_gap: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); t];
    for (ci, (_, ends)) in chords.iter().enumerate() {
        for e in 0..2 {
            let (g, o) = (ends[e], ends[1 - e]);
            per_gap[g].push(((o + t - g) % t, ci, e));
        }
    }
    let mut tokens = Vec::new();
    let mut pos = vec![[0usize; 2]; chords.len()];
    for (g, ends) in per_gap.iter_mut().enumerate() {
        // farther partners sit earlier so that chords sharing a gap nest
        ends.sort_by_key(|e| std::cmp::Reverse(e.0));
        for &(_, ci, e) in ends.iter() {
            pos[ci][e] = tokens.len();
            tokens.push(Token::End(ci, e));
        }
        tokens.push(Token::Item(g));
    }
    for a in 0..chords.len() {
        let (lo, hi) = (pos[a][0].min(pos[a][1]), pos[a][0].max(pos[a][1]));
        for b in a + 1..chords.len() {
            let inside = pos[b].iter().filter(|&&x| lo < x && x < hi).count();
            if inside == 1 {
                return Err(Error::CrossingArcs(chords[a].0, chords[b].0));
            }
        }
    }

    // regions: walk rim edges, jumping across chords
    let l = tokens.len();
    let mut regions: Vec<Region> = Vec::new();
    if l == 0 {
        regions.push(Region::default());
    }
    let mut visited = vec![false; l];
    for start in 0..l {
        if visited[start] {
            continue;
        }
        let mut elems: Vec<Option<RegionSide>> = Vec::new();
        let mut stops_seen: Vec<usize> = Vec::new();
        let mut cur = start;
        loop {
            visited[cur] = true;
            let next = (cur + 1) % l;
            match tokens[next] {
                Token::Item(i) => {
                    match &rim.items[i] {
                        RimItem::Side { label, inverse, .. } => elems.push(Some(RegionSide::Paired {
                            label: label.clone(),
                            inverse: *inverse,
                        })),
                        RimItem::Stop { .. } => {
                            elems.push(None);
                            stops_seen.push(i);
                        }
                    }
                    cur = next;
                }
                Token::End(ci, e) => {
                    elems.push(Some(RegionSide::Chord {
                        arc: chords[ci].0,
                        forward: e == 0,
                    }));
                    cur = pos[ci][1 - e];
                }
            }
            if cur == start {
                break;
            }
        }
        let mut region = region_from_elements(elems);
        region.stop_items = stops_seen;
        regions.push(region);
    }
    if regions.len() != chords.len() + 1 {
        return Err(Error::Invariant(format!(
            "{} chords split the polygon into {} regions",
            chords.len(),
            regions.len()
        )));
    }

    // where each paired side sits
    let mut side_pos: BTreeMap<(String, bool), (usize, usize)> = BTreeMap::new();
    for (r, region) in regions.iter().enumerate() {
        for (k, s) in region.sides.iter().enumerate() {
            if let RegionSide::Paired { label, inverse } = s {
                side_pos.insert((label.clone(), *inverse), (r, k));
            }
        }
    }
    let glued = |label: &str| !cut_labels.contains(label);

    let mut uf = UnionFind::new(regions.len());
    for label in p.pairs().keys() {
        if glued(label) {
            let (r1, _) = side_pos[&(label.clone(), false)];
            let (r2, _) = side_pos[&(label.clone(), true)];
            uf.union(r1, r2);
        }
    }
    let mut roots = BTreeMap::new();
    let piece_of: Vec<usize> = (0..regions.len())
        .map(|r| {
            let root = uf.find(r);
            let next = roots.len();
            *roots.entry(root).or_insert(next)
        })
        .collect();
    let np = roots.len();
    let mut euler = vec![0i64; np];
    let mut stops = vec![0usize; np];
    for (r, region) in regions.iter().enumerate() {
        euler[piece_of[r]] += 1;
        stops[piece_of[r]] += region.stops.iter().sum::<usize>();
    }
    for label in p.pairs().keys() {
        if glued(label) {
            let (r, _) = side_pos[&(label.clone(), false)];
            euler[piece_of[r]] -= 1;
        }
    }

    // boundary components: from the gap after side k, cross glued sides
    let mut boundary = vec![0usize; np];
    let mut seen: Vec<Vec<bool>> = regions.iter().map(|r| vec![false; r.sides.len()]).collect();
    for (r, region) in regions.iter().enumerate() {
        if region.sides.is_empty() {
            boundary[piece_of[r]] += 1;
            continue;
        }
        for k in 0..region.sides.len() {
            if seen[r][k] {
                continue;
            }
            boundary[piece_of[r]] += 1;
            let (mut cr, mut ck) = (r, k);
            while !seen[cr][ck] {
                seen[cr][ck] = true;
                let nk = (ck + 1) % regions[cr].sides.len();
                (cr, ck) = match &regions[cr].sides[nk] {
                    RegionSide::Paired { label, inverse } if glued(label) => side_pos[&(label.clone(), !inverse)],
                    _ => (cr, nk),
                };
            }
        }
    }

    let mut pieces = Vec::with_capacity(np);
    for i in 0..np {
        let twice_genus = 2 - euler[i] - boundary[i] as i64;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::Invariant(format!(
                "piece with chi = {} and {} boundary circles",
                euler[i], boundary[i]
            )));
        }
        pieces.push(Piece {
            euler: euler[i],
            stops: stops[i],
            boundary_components: boundary[i],
            genus: (twice_genus / 2) as usize,
        });
    }
    Ok((
        rim,
        Decomposition {
            regions,
            piece_of,
            pieces,
        },
    ))
}

/// Rotates a cyclic element list to start at an arc side and folds stops into
/// the gap that follows each side.
fn region_from_elements(elems: Vec<Option<RegionSide>>) -> Region {
    let Some(first) = elems.iter().position(Option::is_some) else {
        return Region {
            sides: Vec::new(),
            stops: vec![elems.len()],
            stop_items: Vec::new(),
        };
    };
    let mut region = Region::default();
    let n = elems.len();
    for k in 0..n {
        match &elems[(first + k) % n] {
            Some(side) => {
                region.sides.push(side.clone());
                region.stops.push(0);
            }
            None => *region.stops.last_mut().expect("started at a side") += 1,
        }
    }
    region
}

/// The pieces left after cutting along `arcs`.
pub fn cut_along(p: &PolygonPresentation, arcs: &[Arc]) -> Result<Vec<Piece>> {
    Ok(decompose(p, arcs)?.1.pieces)
}

/// Every piece is a disk with at most one stop.
pub fn is_full(arcs: &[Arc], p: &PolygonPresentation) -> Result<bool> {
    Ok(cut_along(p, arcs)?
        .iter()
        .all(|piece| piece.is_disk() && piece.stops <= 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSystem {
    presentation: PolygonPresentation,
    arcs: Vec<Arc>,
    endpoints: Vec<[BoundaryPoint; 2]>,
    pieces: Vec<Piece>,
    full: bool,
}

impl ArcSystem {
    pub fn new(presentation: PolygonPresentation, arcs: Vec<Arc>) -> Result<Self> {
        let (rim, dec) = decompose(&presentation, &arcs)?;
        let endpoints = arcs
            .iter()
            .map(|a| arc_endpoints(&presentation, &rim, a))
            .collect::<Result<_>>()?;
        let full = dec.pieces.iter().all(|piece| piece.is_disk() && piece.stops <= 1);
        Ok(ArcSystem {
            presentation,
            arcs,
            endpoints,
            pieces: dec.pieces,
            full,
        })
    }

    pub fn presentation(&self) -> &PolygonPresentation {
        &self.presentation
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn endpoints(&self) -> &[[BoundaryPoint; 2]] {
        &self.endpoints
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    /// The relative cellular chain complex of the decomposition, written as a
    /// group presentation.
    pub fn cellular_presentation(&self) -> Result<CellularPresentation> {
        cellular_presentation(&self.presentation, &self.arcs)
    }

    /// Each arc's class as a 1-chain of `complex`, which must be built from a
    /// presentation with the same word as this system's.
    pub fn arc_chains(&self, complex: &CellComplex) -> Result<Vec<Vec<i64>>> {
        let rim = Rim::new(&self.presentation)?;
        self.arcs
            .iter()
            .map(|a| arc_chain(&self.presentation, &rim, complex, a))
            .collect()
    }
}

impl ArcSystem {
    /// For each stop in rim order, the boundary path through it: the half
    /// side running into the stop followed by the half side leaving it.
    pub fn stop_chains(&self, complex: &CellComplex) -> Result<Vec<Vec<i64>>> {
        let p = &self.presentation;
        let rim = Rim::new(p)?;
        Ok(rim
            .stop_items()
            .into_iter()
            .map(|i| {
                let q = rim.items[i].side();
                let mut chain = vec![0i64; complex.edge_names().len()];
                approach(p, complex, q, &mut chain, 1);
                let (h1, _) = complex.half_edges(q).expect("free side has halves");
                chain[h1] += 1;
                chain
            })
            .collect())
    }
}

fn arc_endpoints(p: &PolygonPresentation, rim: &Rim, arc: &Arc) -> Result<[BoundaryPoint; 2]> {
    match &arc.route {
        ArcRoute::Side(label) => {
            let &(f, _) = p
                .pairs()
                .get(label)
                .ok_or_else(|| Error::DegenerateArc(format!("no paired side {label}")))?;
            Ok([
                location_before_corner(p, f),
                location_before_corner(p, (f + 1) % p.len()),
            ])
        }
        ArcRoute::Chord(a, b) => Ok([rim.gap_location(rim.gap(*a)?), rim.gap_location(rim.gap(*b)?)]),
    }
}

/// Chain from the midpoint of the boundary side running into the vertex of
/// corner `q` up to that vertex.
fn approach(p: &PolygonPresentation, complex: &CellComplex, q: usize, chain: &mut [i64], sign: i64) {
    let germ = p
        .in_germ(p.start_vertex(q % p.len()))
        .expect("every vertex is on the boundary");
    let (_, h2) = complex.half_edges(germ).expect("free side has halves");
    chain[h2] += sign;
}

fn side_chain(p: &PolygonPresentation, complex: &CellComplex, q: usize, chain: &mut [i64]) {
    let side = &p.sides()[q];
    match side.kind {
        SideKind::Free => {
            let (h1, h2) = complex.half_edges(q).expect("free side has halves");
            chain[h1] += 1;
            chain[h2] += 1;
        }
        SideKind::Paired { inverse } => {
            let e = complex.pair_edge(&side.label).expect("paired side has an edge");
            chain[e] += if inverse { -1 } else { 1 };
        }
    }
}

fn arc_chain(p: &PolygonPresentation, rim: &Rim, complex: &CellComplex, arc: &Arc) -> Result<Vec<i64>> {
    let mut chain = vec![0i64; complex.edge_names().len()];
    let (from, to, path): (usize, usize, Vec<usize>) = match &arc.route {
        ArcRoute::Side(label) => {
            let &(f, _) = p
                .pairs()
                .get(label)
                .ok_or_else(|| Error::DegenerateArc(format!("no paired side {label}")))?;
            (f, f + 1, vec![f])
        }
        ArcRoute::Chord(a, b) => {
            let qa = rim.items[rim.gap(*a)?].side();
            let qb = rim.items[rim.gap(*b)?].side();
            let n = p.len();
            let len = (qb + n - qa) % n;
            (qa, qb, (0..len).map(|k| (qa + k) % n).collect())
        }
    };
    approach(p, complex, from, &mut chain, 1);
    for q in path {
        side_chain(p, complex, q, &mut chain);
    }
    approach(p, complex, to, &mut chain, -1);
    Ok(chain)
}

/// Generators are the arcs followed by one boundary path through each stop;
/// there is one relation per complementary piece, the signed sum of the arcs
/// and stop paths on its boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularPresentation {
    pub generators: Vec<String>,
    pub relations: IntMatrix,
}

impl CellularPresentation {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::cokernel(&self.relations)
    }
}

pub fn cellular_presentation(p: &PolygonPresentation, arcs: &[Arc]) -> Result<CellularPresentation> {
    let (rim, dec) = decompose(p, arcs)?;
    let stop_items = rim.stop_items();
    let label_arc: BTreeMap<&str, usize> = arcs
        .iter()
        .enumerate()
        .filter_map(|(i, a)| match &a.route {
            ArcRoute::Side(l) => Some((l.as_str(), i)),
            _ => None,
        })
        .collect();
    let mut generators: Vec<String> = arcs.iter().map(ToString::to_string).collect();
    for &i in &stop_items {
        if let RimItem::Stop { circle, index, .. } = rim.items[i] {
            generators.push(format!("s({circle},{index})"));
        }
    }
    let cols = generators.len();
    let mut rows = vec![vec![0i64; cols]; dec.pieces.len()];
    for (r, region) in dec.regions.iter().enumerate() {
        let row = &mut rows[dec.piece_of[r]];
        for side in &region.sides {
            match side {
                RegionSide::Paired { label, inverse } => {
                    if let Some(&a) = label_arc.get(label.as_str()) {
                        row[a] += if *inverse { -1 } else { 1 };
                    }
                }
                RegionSide::Chord { arc, forward } => row[*arc] += if *forward { 1 } else { -1 },
            }
        }
    }
    let column: BTreeMap<usize, usize> = stop_items
        .iter()
        .enumerate()
        .map(|(k, &i)| (i, arcs.len() + k))
        .collect();
    for (r, region) in dec.regions.iter().enumerate() {
        for i in &region.stop_items {
            rows[dec.piece_of[r]][column[i]] += 1;
        }
    }
    Ok(CellularPresentation {
        generators,
        relations: IntMatrix::from_rows_with_cols(&rows, cols),
    })
}

/// One arc per paired side of the canonical word, plus a linking chord around
/// every stop but the last one on the rim.
pub fn minimal_full_arc_system(surface: &ConnectedSurface) -> Result<ArcSystem> {
    if surface.stop_count() == 0 {
        return Err(Error::NoStops);
    }
    let p = canonical_presentation(surface)?;
    let rim = Rim::new(&p)?;
    let mut arcs: Vec<Arc> = p.pair_labels().into_iter().map(Arc::side).collect();
    let stops = rim.stop_items();
    for &i in &stops[..stops.len() - 1] {
        arcs.push(Arc::chord(i, (i + 1) % rim.len()));
    }
    ArcSystem::new(p, arcs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn presentation(g: usize, stops: &[usize]) -> PolygonPresentation {
        canonical_presentation(&ConnectedSurface::new(g, stops)).unwrap()
    }

    #[test]
    fn disk_with_three_stops() {
        let sys = minimal_full_arc_system(&ConnectedSurface::disk(3)).unwrap();
        assert_eq!(sys.len(), 2);
        assert_eq!(sys.pieces().len(), 3);
        assert!(sys.pieces().iter().all(|p| p.is_disk() && p.stops == 1));
        assert!(sys.is_full());
    }

    #[test]
    fn empty_system_on_disk() {
        let p = presentation(0, &[2]);
        let pieces = cut_along(&p, &[]).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].stops, 2);
        assert!(!is_full(&[], &p).unwrap());
        assert!(is_full(&[], &presentation(0, &[1])).unwrap());
    }

    #[test]
    fn cylinder_cross_arc_is_not_full() {
        let p = presentation(0, &[1, 1]);
        let pieces = cut_along(&p, &[Arc::side("t2")]).unwrap();
        assert_eq!(pieces.len(), 1);
        assert!(pieces[0].is_disk());
        assert_eq!(pieces[0].stops, 2);
        assert!(!is_full(&[Arc::side("t2")], &p).unwrap());
        let uncut = cut_along(&p, &[]).unwrap();
        assert_eq!(uncut[0].euler, 0);
        assert_eq!(uncut[0].boundary_components, 2);
    }

    #[test]
    fn minimal_counts() {
        for (g, stops) in [
            (0usize, vec![1usize]),
            (0, vec![4]),
            (0, vec![1, 1]),
            (0, vec![2, 0, 1]),
            (1, vec![1]),
            (1, vec![2, 3]),
            (2, vec![0, 1]),
        ] {
            let s = ConnectedSurface::new(g, &stops);
            let sys = minimal_full_arc_system(&s).unwrap();
            let total: usize = stops.iter().sum();
            assert_eq!(sys.len(), 2 * g + stops.len() + total - 2, "{s:?}");
            assert!(sys.is_full(), "{s:?}");
            assert_eq!(sys.pieces().len(), total);
        }
    }

    #[test]
    fn no_stops_is_an_error() {
        assert_eq!(
            minimal_full_arc_system(&ConnectedSurface::new(1, &[0])).unwrap_err(),
            Error::NoStops
        );
    }

    #[test]
    fn uncut_torus_piece() {
        let pieces = cut_along(&presentation(1, &[1]), &[]).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].genus, 1);
        assert_eq!(pieces[0].boundary_components, 1);
    }

    #[test]
    fn bad_endpoints() {
        let p = presentation(0, &[3]);
        let stop = Arc {
            route: ArcRoute::Chord(RimPoint::Item(0), RimPoint::Gap(1)),
        };
        assert_eq!(cut_along(&p, &[stop]).unwrap_err(), Error::EndpointOnStop(0));
        let same = Arc::chord(1, 1);
        assert!(matches!(cut_along(&p, &[same]), Err(Error::DegenerateArc(_))));
        let q = presentation(0, &[1, 1]);
        let on_arc = Arc {
            route: ArcRoute::Chord(RimPoint::Item(1), RimPoint::Gap(0)),
        };
        assert!(matches!(cut_along(&q, &[on_arc]), Err(Error::EndpointOnArc(_))));
    }

    #[test]
    fn crossing_chords() {
        let p = presentation(0, &[4]);
        let err = cut_along(&p, &[Arc::chord(0, 2), Arc::chord(1, 3)]).unwrap_err();
        assert_eq!(err, Error::CrossingArcs(0, 1));
        let pieces = cut_along(&p, &[Arc::chord(0, 2), Arc::chord(0, 1)]).unwrap();
        assert_eq!(pieces.len(), 3);
    }

    #[test]
    fn cellular_presentation_matches_homology() {
        for (g, stops) in [(0usize, vec![3usize]), (1, vec![2]), (0, vec![1, 2]), (1, vec![1, 0])] {
            let s = ConnectedSurface::new(g, &stops);
            let sys = minimal_full_arc_system(&s).unwrap();
            let group = sys.cellular_presentation().unwrap().group();
            assert_eq!(group, AbelianGroup::free(s.expected_rank()), "{s:?}");
        }
    }
}
