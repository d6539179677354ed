//! Cobordism data, their cone decompositions and relations, group
//! presentations, and the comparison of the arc presentation with relative
//! homology.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cone::{compose_decompositions, rotate_decomposition, GradedObject, IteratedDecomposition, K0Class};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::matrix::{smith_normal_form, IntMatrix};
use crate::surface::{
    build_cell_complex, canonical_presentation, minimal_full_arc_system, relative_homology_h1, BoundaryCircle,
    ConnectedSurface, StoppedSurface,
};

/// Ends of a cobordism: the preferred end `L0` and the others in
/// counterclockwise order, each with its integer grading shift.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CobordismDatum {
    pub preferred: GradedObject,
    pub ends: Vec<GradedObject>,
}

impl CobordismDatum {
    pub fn new(preferred: &str, ends: &[&str]) -> Self {
        CobordismDatum {
            preferred: GradedObject::plain(preferred),
            ends: ends.iter().map(|l| GradedObject::plain(*l)).collect(),
        }
    }

    pub fn with_shifts(mut self, shifts: &[i64]) -> Result<Self> {
        if shifts.len() != self.ends.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} shifts for {} ends",
                shifts.len(),
                self.ends.len()
            )));
        }
        for (end, &k) in self.ends.iter_mut().zip(shifts) {
            end.shift += k;
        }
        Ok(self)
    }

    pub fn labels(&self) -> Vec<&str> {
        std::iter::once(&self.preferred)
            .chain(&self.ends)
            .map(|g| g.label.as_str())
            .collect()
    }
}

impl fmt::Display for CobordismDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ends: Vec<String> = self.ends.iter().map(ToString::to_string).collect();
        write!(f, "({}; {})", self.preferred, ends.join(", "))
    }
}

/// `L0 ≅ [L_n[-1] -> [... -> [L_2[-1] -> L_1]]]`.
pub fn cone_from_cobordism(d: &CobordismDatum) -> Result<IteratedDecomposition> {
    if d.ends.is_empty() {
        return Err(Error::TooFewEnds { needed: 1, got: 0 });
    }
    IteratedDecomposition::new(d.preferred.clone(), d.ends.clone())
}

/// `L0 - L1 - ... - Ln`; a single end gives `L0`.
pub fn k0_relation(d: &CobordismDatum) -> K0Class {
    d.ends.iter().fold(d.preferred.class(), |row, end| row - end.class())
}

/// Makes the last end preferred.
pub fn rotate_preferred_end(d: &CobordismDatum) -> Result<CobordismDatum> {
    let r = rotate_decomposition(&cone_from_cobordism(d)?);
    Ok(CobordismDatum {
        preferred: r.target,
        ends: r.parts,
    })
}

/// Glues `inner` onto end `slot` (1-based) of `outer`.
pub fn concatenate(outer: &CobordismDatum, slot: usize, inner: &CobordismDatum) -> Result<CobordismDatum> {
    if slot == 0 || slot > outer.ends.len() {
        return Err(Error::OutOfRange(format!("slot {slot} of {} ends", outer.ends.len())));
    }
    if inner.ends.is_empty() {
        return Err(Error::TooFewEnds { needed: 1, got: 0 });
    }
    let composed = compose_decompositions(&cone_from_cobordism(outer)?, slot - 1, &cone_from_cobordism(inner)?)?;
    Ok(CobordismDatum {
        preferred: composed.target,
        ends: composed.parts,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Cobordism,
    Isotopy,
    Surgery,
    ZeroObject,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Relation {
    pub kind: RelationKind,
    pub row: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Relation {
    pub fn new(kind: RelationKind, class: &K0Class) -> Self {
        Relation {
            kind,
            row: class.terms().clone(),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

pub fn cobordism_relation(d: &CobordismDatum) -> Relation {
    Relation::new(RelationKind::Cobordism, &k0_relation(d))
}

/// `L - L1 - L2` for the surgery of `L1` and `L2` at one transverse point.
pub fn surgery_relation(l: &str, l1: &str, l2: &str) -> Relation {
    let row = K0Class::single(l, 1) - K0Class::single(l1, 1) - K0Class::single(l2, 1);
    Relation::new(RelationKind::Surgery, &row)
}

pub fn isotopy_relation(l: &str, other: &str) -> Relation {
    let row = K0Class::single(l, 1) - K0Class::single(other, 1);
    Relation::new(RelationKind::Isotopy, &row)
}

pub fn zero_relation(l: &str) -> Relation {
    Relation::new(RelationKind::ZeroObject, &K0Class::single(l, 1))
}

/// Generators and relation rows, as read from and written to relation files.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relations: Vec<Relation>,
}

impl GroupPresentation {
    pub fn new(generators: impl IntoIterator<Item = impl Into<String>>) -> Result<Self> {
        let p = GroupPresentation {
            generators: generators.into_iter().map(Into::into).collect(),
            relations: Vec::new(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for g in &self.generators {
            if !seen.insert(g.as_str()) {
                return Err(Error::Parse(format!("generator {g:?} declared twice")));
            }
        }
        for r in &self.relations {
            for label in r.row.keys() {
                if !seen.contains(label.as_str()) {
                    return Err(Error::UndeclaredLabel(label.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn push(&mut self, relation: Relation) -> Result<()> {
        if let Some(label) = relation.row.keys().find(|l| !self.generators.contains(l)) {
            return Err(Error::UndeclaredLabel(label.clone()));
        }
        self.relations.push(relation);
        Ok(())
    }

    pub fn matrix(&self) -> IntMatrix {
        let index: BTreeMap<&str, usize> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.as_str(), i))
            .collect();
        let rows: Vec<Vec<i64>> = self
            .relations
            .iter()
            .map(|r| {
                let mut row = vec![0; self.generators.len()];
                for (label, &c) in &r.row {
                    row[index[label.as_str()]] += c;
                }
                row
            })
            .collect();
        IntMatrix::from_rows_with_cols(&rows, self.generators.len())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: GroupPresentation = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }
}

pub fn present_group(p: &GroupPresentation) -> Result<AbelianGroup> {
    p.validate()?;
    Ok(AbelianGroup::cokernel(&p.matrix()))
}

/// Outcome of comparing the two computations on one connected component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCheck {
    pub surface: ConnectedSurface,
    /// A stop was placed on the first circle to build arcs on a stopless surface.
    pub added_stop: bool,
    pub arcs: usize,
    pub presentation: GroupPresentation,
    pub presentation_group: AbelianGroup,
    pub homology_group: AbelianGroup,
    /// arc name and its relative 1-chain
    pub images: Vec<(String, String)>,
    /// arc classes are relative cycles and every relation maps to zero
    pub well_defined: bool,
    /// arc classes generate the relative homology
    pub surjective: bool,
}

impl ComponentCheck {
    pub fn passed(&self) -> bool {
        self.well_defined && self.surjective && self.presentation_group == self.homology_group
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub components: Vec<ComponentCheck>,
    pub presentation_group: AbelianGroup,
    pub homology_group: AbelianGroup,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.components.iter().all(ComponentCheck::passed)
    }

    /// Line-oriented text, fields in a fixed order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.components.iter().enumerate() {
            let stops: Vec<String> = c.surface.boundary.iter().map(|b| b.stops.to_string()).collect();
            out.push_str(&format!(
                "component {i}: genus {} stops [{}]{}\n",
                c.surface.genus,
                stops.join(", "),
                if c.added_stop {
                    " (arcs built after adding one stop)"
                } else {
                    ""
                }
            ));
            out.push_str(&format!("  arcs: {}\n", c.arcs));
            for (name, chain) in &c.images {
                out.push_str(&format!("  {name} -> {chain}\n"));
            }
            out.push_str(&format!("  presentation: {}\n", c.presentation_group));
            out.push_str(&format!("  homology: {}\n", c.homology_group));
            out.push_str(&format!("  well defined: {}\n", yes_no(c.well_defined)));
            out.push_str(&format!("  surjective: {}\n", yes_no(c.surjective)));
        }
        out.push_str(&format!("presentation: {}\n", self.presentation_group));
        out.push_str(&format!("homology: {}\n", self.homology_group));
        out.push_str(if self.passed() { "MATCH\n" } else { "MISMATCH\n" });
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Builds the arc presentation of every component and compares it with
/// `H_1(S, dS - f)`.
pub fn verify_theorem(surface: &StoppedSurface) -> Result<TheoremReport> {
    surface.validate()?;
    let components = surface
        .components
        .iter()
        .map(check_component)
        .collect::<Result<Vec<_>>>()?;
    let presentation_group = AbelianGroup::sum(components.iter().map(|c| &c.presentation_group));
    let homology_group = AbelianGroup::sum(components.iter().map(|c| &c.homology_group));
    Ok(TheoremReport {
        components,
        presentation_group,
        homology_group,
    })
}

/// The arc presentation of one connected surface. A stopless surface gets a
/// stop on its first circle; the canonical word does not change.
pub fn arc_presentation(surface: &ConnectedSurface) -> Result<GroupPresentation> {
    let stopped = with_stop(surface);
    let system = minimal_full_arc_system(&stopped)?;
    let cellular = system.cellular_presentation()?;
    let mut p = GroupPresentation::new(cellular.generators.clone())?;
    for i in 0..cellular.relations.rows() {
        let mut row = K0Class::zero();
        for (j, g) in cellular.generators.iter().enumerate() {
            row.add_term(g, cellular.relations[(i, j)]);
        }
        p.push(Relation::new(RelationKind::Cobordism, &row).with_note(format!("piece {i}")))?;
    }
    Ok(p)
}

fn with_stop(surface: &ConnectedSurface) -> ConnectedSurface {
    let mut stopped = surface.clone();
    if stopped.stop_count() == 0 {
        stopped.boundary[0] = BoundaryCircle { stops: 1 };
    }
    stopped
}

fn check_component(surface: &ConnectedSurface) -> Result<ComponentCheck> {
    let added_stop = surface.stop_count() == 0;
    let stopped = with_stop(surface);
    let system = minimal_full_arc_system(&stopped)?;
    let cellular = system.cellular_presentation()?;
    let presentation = arc_presentation(surface)?;
    let presentation_group = present_group(&presentation)?;

    let complex = build_cell_complex(&canonical_presentation(surface)?)?;
    let homology_group = relative_homology_h1(&complex);
    let (d2, d1) = complex.relative_boundaries();

    let arc_chains = system.arc_chains(&complex)?;
    let stop_chains = system.stop_chains(&complex)?;
    let rel: Vec<Vec<i64>> = arc_chains
        .iter()
        .chain(&stop_chains)
        .map(|c| complex.relative_chain(c))
        .collect();
    let cycles = rel.iter().all(|c| d1.apply_row(c).iter().all(|&x| x == 0));
    let boundaries = smith_normal_form(&d2);
    let relations_vanish = (0..cellular.relations.rows()).all(|i| {
        let mut image = vec![0i64; d2.cols()];
        for (j, chain) in rel.iter().enumerate() {
            let k = cellular.relations[(i, j)];
            for (x, &y) in image.iter_mut().zip(chain) {
                *x += k * y;
            }
        }
        boundaries.row_lattice_contains(&image)
    });

    // the arcs and the 2-cell boundary span exactly the relative cycles
    let arc_rows = IntMatrix::from_rows_with_cols(&rel[..arc_chains.len()], d2.cols());
    let spanned = smith_normal_form(&arc_rows.stack(&d2));
    let cycle_rank = d1.rows() - smith_normal_form(&d1).rank();
    let surjective = spanned.rank() == cycle_rank && spanned.invariant_factors().iter().all(|&d| d == 1);

    let images = system
        .arcs()
        .iter()
        .zip(&arc_chains)
        .map(|(a, c)| (a.to_string(), complex.format_chain(c)))
        .collect();
    Ok(ComponentCheck {
        surface: surface.clone(),
        added_stop,
        arcs: system.len(),
        presentation,
        presentation_group,
        homology_group,
        images,
        well_defined: cycles && relations_vanish,
        surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cones_from_ends() {
        let d1 = CobordismDatum::new("L0", &["L1"]);
        assert_eq!(cone_from_cobordism(&d1).unwrap().to_string(), "L0 ≅ L1");
        let d2 = CobordismDatum::new("L0", &["L1", "L2"]);
        assert_eq!(cone_from_cobordism(&d2).unwrap().to_string(), "L0 ≅ [L2[-1] -> L1]");
        let d3 = CobordismDatum::new("L0", &["L1", "L2", "L3"]);
        assert_eq!(
            cone_from_cobordism(&d3).unwrap().to_string(),
            "L0 ≅ [L3[-1] -> [L2[-1] -> L1]]"
        );
        let d0 = CobordismDatum::new("L0", &[]);
        assert_eq!(
            cone_from_cobordism(&d0).unwrap_err(),
            Error::TooFewEnds { needed: 1, got: 0 }
        );
        assert_eq!(k0_relation(&d0).to_string(), "L0");
    }

    #[test]
    fn relation_rows() {
        let d = CobordismDatum::new("L0", &["L1", "L2"]);
        assert_eq!(k0_relation(&d).to_string(), "L0 - L1 - L2");
        let r = rotate_preferred_end(&d).unwrap();
        assert_eq!(r.preferred.label, "L2");
        assert_eq!(k0_relation(&r), -k0_relation(&d));
        let swap = rotate_preferred_end(&CobordismDatum::new("L0", &["L1"])).unwrap();
        assert_eq!(swap, CobordismDatum::new("L1", &["L0"]));
    }

    #[test]
    fn concatenation() {
        let outer = CobordismDatum::new("L0", &["L1", "L2"]);
        let inner = CobordismDatum::new("L2", &["K1", "K2"]);
        let c = concatenate(&outer, 2, &inner).unwrap();
        assert_eq!(c, CobordismDatum::new("L0", &["L1", "K1", "K2"]));
        assert!(matches!(
            concatenate(&outer, 1, &inner),
            Err(Error::LabelMismatch { .. })
        ));
    }

    #[test]
    fn presentations() {
        let mut p = GroupPresentation::new(["D0", "D1", "D2"]).unwrap();
        assert_eq!(present_group(&p).unwrap(), AbelianGroup::free(3));
        p.push(cobordism_relation(&CobordismDatum::new("D0", &["D1", "D2"])))
            .unwrap();
        assert_eq!(present_group(&p).unwrap(), AbelianGroup::free(2));
        let mut q = GroupPresentation::new(["L"]).unwrap();
        let mut twice = zero_relation("L");
        twice.row.insert("L".into(), 2);
        q.push(twice).unwrap();
        assert_eq!(present_group(&q).unwrap().to_string(), "Z/2");
        assert_eq!(
            q.push(surgery_relation("L", "M", "N")).unwrap_err(),
            Error::UndeclaredLabel("M".into())
        );
        let json = p.to_json();
        assert_eq!(GroupPresentation::from_json(&json).unwrap(), p);
    }

    #[test]
    fn relation_json_shape() {
        let text = r#"{"generators":["L0","L1"],"relations":[{"kind":"cobordism","row":{"L0":1,"L1":-1}}]}"#;
        let p = GroupPresentation::from_json(text).unwrap();
        assert_eq!(p.relations[0].kind, RelationKind::Cobordism);
        let bad = r#"{"generators":["L0"],"relations":[{"kind":"zero_object","row":{"L9":1}}]}"#;
        assert_eq!(
            GroupPresentation::from_json(bad).unwrap_err(),
            Error::UndeclaredLabel("L9".into())
        );
    }

    #[test]
    fn theorem_examples() {
        for (g, stops, rank) in [
            (0usize, vec![3usize], 2usize),
            (0, vec![1, 0], 1),
            (0, vec![0, 0], 1),
            (1, vec![1], 2),
        ] {
            let s = StoppedSurface::connected(g, &stops).unwrap();
            let report = verify_theorem(&s).unwrap();
            assert!(report.passed(), "{}", report.render());
            assert_eq!(report.homology_group, AbelianGroup::free(rank));
        }
    }
}
