//! CW model of a presented surface and the relative homology of the pair
//! `(S, dS - f)`.
//!
//! Every free side is subdivided at a midpoint. The marked subcomplex holds the
//! midpoints, all non-stop boundary vertices and every half-edge whose vertex
//! end is not a stop; it deformation retracts onto `dS - f`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::matrix::IntMatrix;
use crate::surface::presentation::{PolygonPresentation, SideKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    /// edges x vertices
    d1: IntMatrix,
    /// faces x edges
    d2: IntMatrix,
    marked_vertices: Vec<bool>,
    marked_edges: Vec<bool>,
    pair_edge: BTreeMap<String, usize>,
    /// free side -> (first half, second half)
    half_edges: BTreeMap<usize, (usize, usize)>,
}

pub fn build_cell_complex(p: &PolygonPresentation) -> Result<CellComplex> {
    let n = p.len();
    let v0 = p.vertex_count();
    let free: Vec<usize> = p.free_sides().collect();

    let mut vertex_names: Vec<String> = (0..v0).map(|v| format!("v{v}")).collect();
    let mut marked_vertices: Vec<bool> = (0..v0).map(|v| p.in_germ(v).is_some() && !p.is_stop(v)).collect();
    let mut mid = BTreeMap::new();
    for &q in &free {
        mid.insert(q, vertex_names.len());
        vertex_names.push(format!("m({})", p.sides()[q].label));
        marked_vertices.push(true);
    }

    let mut edge_names = Vec::new();
    let mut marked_edges = Vec::new();
    let mut pair_edge = BTreeMap::new();
    for label in p.pair_labels() {
        pair_edge.insert(label.to_string(), edge_names.len());
        edge_names.push(label.to_string());
        marked_edges.push(false);
    }
    let mut half_edges = BTreeMap::new();
    for &q in &free {
        let label = &p.sides()[q].label;
        let h1 = edge_names.len();
        edge_names.push(format!("{label}'"));
        marked_edges.push(!p.is_stop(p.start_vertex(q)));
        let h2 = edge_names.len();
        edge_names.push(format!("{label}''"));
        marked_edges.push(!p.is_stop(p.end_vertex(q)));
        half_edges.insert(q, (h1, h2));
    }

    let (nv, ne) = (vertex_names.len(), edge_names.len());
    let mut d1 = IntMatrix::zeros(ne, nv);
    for (label, &(f, _)) in p.pairs() {
        let e = pair_edge[label];
        d1[(e, p.end_vertex(f))] += 1;
        d1[(e, p.start_vertex(f))] -= 1;
    }
    for &q in &free {
        let (h1, h2) = half_edges[&q];
        let m = mid[&q];
        d1[(h1, m)] += 1;
        d1[(h1, p.start_vertex(q))] -= 1;
        d1[(h2, p.end_vertex(q))] += 1;
        d1[(h2, m)] -= 1;
    }
    let mut d2 = IntMatrix::zeros(1, ne);
    for q in 0..n {
        let side = &p.sides()[q];
        match side.kind {
            SideKind::Free => {
                let (h1, h2) = half_edges[&q];
                d2[(0, h1)] += 1;
                d2[(0, h2)] += 1;
            }
            SideKind::Paired { inverse } => {
                d2[(0, pair_edge[&side.label])] += if inverse { -1 } else { 1 };
            }
        }
    }

    let c = CellComplex {
        vertex_names,
        edge_names,
        d1,
        d2,
        marked_vertices,
        marked_edges,
        pair_edge,
        half_edges,
    };
    c.check(p.euler_characteristic())?;
    Ok(c)
}

impl CellComplex {
    fn check(&self, chi: i64) -> Result<()> {
        if !self.d2.mul(&self.d1).is_zero() {
            return Err(Error::Invariant("boundary of boundary is nonzero".into()));
        }
        let (v, e, f) = self.cell_counts();
        // each subdivision adds one vertex and one edge
        if v as i64 - e as i64 + f as i64 != chi {
            return Err(Error::Invariant("cell count disagrees with corner tracing".into()));
        }
        for e in 0..self.edge_names.len() {
            if self.marked_edges[e] {
                let ends_marked = (0..self.vertex_names.len()).all(|v| self.d1[(e, v)] == 0 || self.marked_vertices[v]);
                if !ends_marked {
                    return Err(Error::Invariant(format!(
                        "marked edge {} has an unmarked end",
                        self.edge_names[e]
                    )));
                }
            }
        }
        Ok(())
    }

    /// (vertices, edges, faces)
    pub fn cell_counts(&self) -> (usize, usize, usize) {
        (self.vertex_names.len(), self.edge_names.len(), self.d2.rows())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f) = self.cell_counts();
        v as i64 - e as i64 + f as i64
    }

    pub fn boundary_1(&self) -> &IntMatrix {
        &self.d1
    }

    pub fn boundary_2(&self) -> &IntMatrix {
        &self.d2
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edge_names
    }

    pub fn is_marked_vertex(&self, v: usize) -> bool {
        self.marked_vertices[v]
    }

    pub fn is_marked_edge(&self, e: usize) -> bool {
        self.marked_edges[e]
    }

    pub fn pair_edge(&self, label: &str) -> Option<usize> {
        self.pair_edge.get(label).copied()
    }

    /// The two halves of a free side, in boundary order.
    pub fn half_edges(&self, side: usize) -> Option<(usize, usize)> {
        self.half_edges.get(&side).copied()
    }

    fn unmarked_edges(&self) -> Vec<usize> {
        (0..self.edge_names.len()).filter(|&e| !self.marked_edges[e]).collect()
    }

    fn unmarked_vertices(&self) -> Vec<usize> {
        (0..self.vertex_names.len())
            .filter(|&v| !self.marked_vertices[v])
            .collect()
    }

    /// Relative boundary maps (faces x edges, edges x vertices) after
    /// dropping marked cells.
    pub fn relative_boundaries(&self) -> (IntMatrix, IntMatrix) {
        let es = self.unmarked_edges();
        let vs = self.unmarked_vertices();
        let d2 = IntMatrix::from_rows_with_cols(
            &(0..self.d2.rows())
                .map(|f| es.iter().map(|&e| self.d2[(f, e)]).collect())
                .collect::<Vec<_>>(),
            es.len(),
        );
        let d1 = IntMatrix::from_rows_with_cols(
            &es.iter()
                .map(|&e| vs.iter().map(|&v| self.d1[(e, v)]).collect())
                .collect::<Vec<_>>(),
            vs.len(),
        );
        (d2, d1)
    }

    /// Restricts a full 1-chain to the unmarked edges.
    pub fn relative_chain(&self, chain: &[i64]) -> Vec<i64> {
        self.unmarked_edges().iter().map(|&e| chain[e]).collect()
    }

    pub fn format_chain(&self, chain: &[i64]) -> String {
        let terms: Vec<String> = chain
            .iter()
            .enumerate()
            .filter(|(e, &c)| c != 0 && !self.marked_edges[*e])
            .map(|(e, &c)| match c {
                1 => format!("+{}", self.edge_names[e]),
                -1 => format!("-{}", self.edge_names[e]),
                c => format!("{c:+}{}", self.edge_names[e]),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" ")
        }
    }
}

pub fn relative_homology_h1(c: &CellComplex) -> AbelianGroup {
    let (d2, d1) = c.relative_boundaries();
    AbelianGroup::homology(&d2, &d1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{canonical_presentation, ConnectedSurface};

    fn complex(g: usize, stops: &[usize]) -> CellComplex {
        let p = canonical_presentation(&ConnectedSurface::new(g, stops)).unwrap();
        build_cell_complex(&p).unwrap()
    }

    fn h1(g: usize, stops: &[usize]) -> AbelianGroup {
        relative_homology_h1(&complex(g, stops))
    }

    // Counts before subdivision: V - E + F on the unsubdivided polygon model.
    fn coarse_counts(c: &CellComplex) -> (usize, usize, usize) {
        let (v, e, f) = c.cell_counts();
        let mids = c.half_edges.len();
        (v - mids, e - mids, f)
    }

    #[test]
    fn disk_counts() {
        assert_eq!(coarse_counts(&complex(0, &[1])), (1, 1, 1));
        assert_eq!(coarse_counts(&complex(0, &[3])), (3, 3, 1));
        assert_eq!(complex(0, &[0, 0]).euler_characteristic(), 0);
    }

    #[test]
    fn homology_examples() {
        assert_eq!(h1(0, &[0, 0]), AbelianGroup::free(1));
        assert_eq!(h1(0, &[3]), AbelianGroup::free(2));
        assert_eq!(h1(0, &[1]), AbelianGroup::trivial());
        assert_eq!(h1(1, &[0]), AbelianGroup::free(2));
        assert_eq!(h1(0, &[0]), AbelianGroup::trivial());
    }

    #[test]
    fn marked_subcomplex_is_closed() {
        for stops in [[0usize, 2], [1, 0], [3, 3]] {
            let c = complex(1, &stops);
            for e in 0..c.edge_names().len() {
                if c.is_marked_edge(e) {
                    for v in 0..c.vertex_names().len() {
                        if c.boundary_1()[(e, v)] != 0 {
                            assert!(c.is_marked_vertex(v));
                        }
                    }
                }
            }
        }
    }
}
