//! Stopped surfaces of finite type and their combinatorial models.
//!
//! A surface is a disjoint union of connected pieces, each a closed oriented
//! surface of some genus with open disks removed. Every boundary circle carries
//! a finite number of stops.

mod arcs;
mod complex;
mod presentation;
mod triangulation;

pub use arcs::{
    cut_along, is_full, minimal_full_arc_system, Arc, ArcRoute, ArcSystem, BoundaryPoint, CellularPresentation, Piece,
    Rim, RimItem, RimPoint,
};
pub use complex::{build_cell_complex, relative_homology_h1, CellComplex};
pub use presentation::{canonical_presentation, PolygonPresentation, Side, SideKind};
pub use triangulation::{catalan, flip, flip_graph, FlipGraph, Triangulation};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::AbelianGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryCircle {
    pub stops: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectedSurface {
    pub genus: usize,
    pub boundary: Vec<BoundaryCircle>,
}

impl ConnectedSurface {
    pub fn new(genus: usize, stops: &[usize]) -> Self {
        ConnectedSurface {
            genus,
            boundary: stops.iter().map(|&stops| BoundaryCircle { stops }).collect(),
        }
    }

    pub fn disk(stops: usize) -> Self {
        Self::new(0, &[stops])
    }

    pub fn circles(&self) -> usize {
        self.boundary.len()
    }

    pub fn stop_count(&self) -> usize {
        self.boundary.iter().map(|c| c.stops).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary.len() as i64
    }

    /// Closed-form rank of `H_1(S, dS - f)`.
    pub fn expected_rank(&self) -> usize {
        let (g, b, s) = (self.genus, self.circles(), self.stop_count());
        if s == 0 {
            2 * g + b - 1
        } else {
            2 * g + b + s - 2
        }
    }
}

/// A possibly disconnected stopped surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StoppedSurface {
    pub components: Vec<ConnectedSurface>,
}

impl StoppedSurface {
    pub fn new(components: Vec<ConnectedSurface>) -> Result<Self> {
        let s = StoppedSurface { components };
        s.validate()?;
        Ok(s)
    }

    pub fn connected(genus: usize, stops: &[usize]) -> Result<Self> {
        Self::new(vec![ConnectedSurface::new(genus, stops)])
    }

    pub fn disk(stops: usize) -> Self {
        StoppedSurface {
            components: vec![ConnectedSurface::disk(stops)],
        }
    }

    pub fn cylinder(stops: [usize; 2]) -> Self {
        StoppedSurface {
            components: vec![ConnectedSurface::new(0, &stops)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.components.iter().enumerate() {
            if c.boundary.is_empty() {
                return Err(Error::EmptyBoundary(i));
            }
        }
        Ok(())
    }

    pub fn stop_count(&self) -> usize {
        self.components.iter().map(ConnectedSurface::stop_count).sum()
    }

    /// The single component, or an error for disconnected input.
    pub fn as_connected(&self) -> Result<&ConnectedSurface> {
        match self.components.as_slice() {
            [c] => Ok(c),
            cs => Err(Error::Disconnected(cs.len())),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: StoppedSurface = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    /// Components sorted by (genus, number of circles), circles by stop count.
    pub fn canonical(&self) -> StoppedSurface {
        let mut components = self.components.clone();
        for c in &mut components {
            c.boundary.sort();
        }
        components
            .sort_by(|a, b| (a.genus, a.boundary.len(), &a.boundary).cmp(&(b.genus, b.boundary.len(), &b.boundary)));
        StoppedSurface { components }
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&self.canonical()).expect("surface serializes")
    }
}

pub fn euler_characteristic(surface: &StoppedSurface) -> i64 {
    surface
        .components
        .iter()
        .map(ConnectedSurface::euler_characteristic)
        .sum()
}

/// `H_1(S, dS - f)` summed over components.
pub fn surface_homology(surface: &StoppedSurface) -> Result<AbelianGroup> {
    surface.validate()?;
    let mut total = AbelianGroup::trivial();
    for c in &surface.components {
        let p = canonical_presentation(c)?;
        total = total.direct_sum(&relative_homology_h1(&build_cell_complex(&p)?));
    }
    Ok(total)
}

/// A surface description file: the surface plus optional names for circles and
/// stops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpecFile {
    pub components: Vec<ConnectedSurface>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Label {
    pub name: String,
    pub component: usize,
    pub circle: usize,
    /// Present for stop labels, absent for circle labels.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<usize>,
}

impl SurfaceSpecFile {
    /// Parses and validates. Schema problems are `Error::Parse`, violated
    /// surface invariants keep their own variants.
    pub fn from_json(text: &str) -> Result<Self> {
        let f: SurfaceSpecFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut seen = BTreeSet::new();
        for l in &f.labels {
            if !seen.insert(l.name.as_str()) {
                return Err(Error::Parse(format!("duplicate label {:?}", l.name)));
            }
            let circle = f
                .components
                .get(l.component)
                .and_then(|c| c.boundary.get(l.circle))
                .ok_or_else(|| Error::Parse(format!("label {:?} names no circle", l.name)))?;
            if let Some(k) = l.stop {
                if k >= circle.stops {
                    return Err(Error::Parse(format!("label {:?} names no stop", l.name)));
                }
            }
        }
        f.surface()?;
        Ok(f)
    }

    pub fn surface(&self) -> Result<StoppedSurface> {
        StoppedSurface::new(self.components.clone())
    }

    pub fn find(&self, name: &str) -> Option<&Label> {
        self.labels.iter().find(|l| l.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic(&StoppedSurface::disk(1)), 1);
        assert_eq!(euler_characteristic(&StoppedSurface::cylinder([0, 0])), 0);
        let s = StoppedSurface::connected(2, &[0, 0, 0]).unwrap();
        assert_eq!(euler_characteristic(&s), -5);
    }

    #[test]
    fn euler_matches_cells() {
        let s = StoppedSurface::connected(2, &[1, 0, 2]).unwrap();
        let p = canonical_presentation(s.as_connected().unwrap()).unwrap();
        let (v, e, f) = build_cell_complex(&p).unwrap().cell_counts();
        assert_eq!(v as i64 - e as i64 + f as i64, -5);
    }

    #[test]
    fn rejects_closed_components() {
        let err = StoppedSurface::new(vec![ConnectedSurface::new(1, &[])]).unwrap_err();
        assert_eq!(err, Error::EmptyBoundary(0));
    }

    #[test]
    fn json_schema() {
        let s = StoppedSurface::from_json(r#"{"components":[{"genus":0,"boundary":[{"stops":3}]}]}"#).unwrap();
        assert_eq!(s, StoppedSurface::disk(3));
        assert!(matches!(
            StoppedSurface::from_json(r#"{"components":[{"genus":-1,"boundary":[]}]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            StoppedSurface::from_json(r#"{"components":[{"genus":0,"boundary":[]}]}"#),
            Err(Error::EmptyBoundary(0))
        ));
    }

    #[test]
    fn canonical_serialization_sorts() {
        let s = StoppedSurface::new(vec![
            ConnectedSurface::new(1, &[2, 0]),
            ConnectedSurface::new(0, &[3, 1]),
            ConnectedSurface::new(0, &[1]),
        ])
        .unwrap();
        assert_eq!(
            s.to_canonical_json(),
            r#"{"components":[{"genus":0,"boundary":[{"stops":1}]},{"genus":0,"boundary":[{"stops":1},{"stops":3}]},{"genus":1,"boundary":[{"stops":0},{"stops":2}]}]}"#
        );
    }

    #[test]
    fn labels_are_checked() {
        let ok = r#"{"components":[{"genus":0,"boundary":[{"stops":2}]}],
                     "labels":[{"name":"p","component":0,"circle":0,"stop":1},
                               {"name":"C","component":0,"circle":0}]}"#;
        let f = SurfaceSpecFile::from_json(ok).unwrap();
        assert_eq!(f.find("p").unwrap().stop, Some(1));
        let dup = r#"{"components":[{"genus":0,"boundary":[{"stops":2}]}],
                      "labels":[{"name":"p","component":0,"circle":0},{"name":"p","component":0,"circle":0}]}"#;
        assert!(matches!(SurfaceSpecFile::from_json(dup), Err(Error::Parse(_))));
        let bad = r#"{"components":[{"genus":0,"boundary":[{"stops":2}]}],
                      "labels":[{"name":"p","component":0,"circle":0,"stop":2}]}"#;
        assert!(matches!(SurfaceSpecFile::from_json(bad), Err(Error::Parse(_))));
    }
}
