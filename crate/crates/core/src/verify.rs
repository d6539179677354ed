//! Invariant suites over single surfaces and surface grids.

use std::fmt;

use serde::Serialize;

use crate::cobordism::verify_theorem;
use crate::error::Result;
use crate::gluing::{add_stop, attach_handle, circular_glue, glue_disk, CircleRef, GluingReport, StopRef};
use crate::group::AbelianGroup;
use crate::par::{self, Execution};
use crate::surface::{
    build_cell_complex, canonical_presentation, minimal_full_arc_system, relative_homology_h1, ConnectedSurface,
    StoppedSurface,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: String, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Check::new(name, passed, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "ok" } else { "FAIL" };
        write!(f, "[{status}] {}: {}", self.name, self.detail)
    }
}

/// Short name like `g1 [2, 0]`.
pub fn surface_name(s: &ConnectedSurface) -> String {
    let stops: Vec<String> = s.boundary.iter().map(|b| b.stops.to_string()).collect();
    format!("g{} [{}]", s.genus, stops.join(", "))
}

fn stopped_name(s: &StoppedSurface) -> String {
    let parts: Vec<String> = s.components.iter().map(surface_name).collect();
    parts.join(" + ")
}

/// Stop counts `c_1 >= c_2 >= ... >= c_b >= 0` summing to `total`.
fn distributions(circles: usize, total: usize, max: usize) -> Vec<Vec<usize>> {
    if circles == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total.min(max)).rev() {
        for mut rest in distributions(circles - 1, total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Connected surfaces with `genus <= gmax`, `1 <= circles <= bmax` and
/// `smin <= stops <= smax`, one per multiset of stop counts.
pub fn connected_grid(gmax: usize, bmax: usize, smin: usize, smax: usize) -> Vec<ConnectedSurface> {
    let mut out = Vec::new();
    for g in 0..=gmax {
        for b in 1..=bmax {
            for s in smin..=smax {
                for d in distributions(b, s, s) {
                    out.push(ConnectedSurface::new(g, &d));
                }
            }
        }
    }
    out
}

pub fn homology_check(s: &ConnectedSurface) -> Check {
    let name = format!("homology {}", surface_name(s));
    Check::from_result(
        name,
        (|| {
            let p = canonical_presentation(s)?;
            let c = build_cell_complex(&p)?;
            let h = relative_homology_h1(&c);
            let expected = AbelianGroup::free(s.expected_rank());
            Ok((h == expected, format!("{h} (expected {expected})")))
        })(),
    )
}

pub fn theorem_check(s: &StoppedSurface) -> Check {
    let name = format!("theorem {}", stopped_name(s));
    Check::from_result(
        name,
        verify_theorem(s).map(|r| {
            (
                r.passed(),
                format!("presentation {} vs homology {}", r.presentation_group, r.homology_group),
            )
        }),
    )
}

/// Minimal arc system size and pieces; skipped for stopless surfaces.
pub fn arc_check(s: &ConnectedSurface) -> Option<Check> {
    let total = s.stop_count();
    if total == 0 {
        return None;
    }
    let name = format!("arcs {}", surface_name(s));
    Some(Check::from_result(
        name,
        minimal_full_arc_system(s).map(|sys| {
            let expected = 2 * s.genus + s.circles() + total - 2;
            let disks = sys.pieces().iter().filter(|p| p.is_disk() && p.stops == 1).count();
            let ok = sys.len() == expected && sys.pieces().len() == total && disks == total && sys.is_full();
            (
                ok,
                format!(
                    "{} arcs (expected {expected}), {disks} one-stop disks of {} pieces",
                    sys.len(),
                    sys.pieces().len()
                ),
            )
        }),
    ))
}

fn gluing_check(r: Result<GluingReport>) -> Check {
    match r {
        Ok(r) => {
            let name = format!("{} on {}", r.operation, stopped_name(&r.before));
            Check::new(name, r.verdict, r.claim_line())
        }
        Err(e) => Check::new("gluing", false, format!("error: {e}")),
    }
}

/// Every applicable gluing operation on `s`.
pub fn gluing_checks(s: &StoppedSurface) -> Vec<Check> {
    let mut out = Vec::new();
    let mut circles = Vec::new();
    let mut stops = Vec::new();
    for (c, comp) in s.components.iter().enumerate() {
        for (k, b) in comp.boundary.iter().enumerate() {
            circles.push((
                CircleRef {
                    component: c,
                    circle: k,
                },
                b.stops,
            ));
            for i in 0..b.stops {
                stops.push(StopRef {
                    component: c,
                    circle: k,
                    stop: i,
                });
            }
        }
    }
    for &(r, _) in &circles {
        out.push(gluing_check(add_stop(s, r)));
    }
    for (i, &a) in stops.iter().enumerate() {
        for &b in &stops[i + 1..] {
            out.push(gluing_check(attach_handle(s, a, b)));
        }
    }
    for &(r, n) in &circles {
        if n == 0 && s.components[r.component].circles() >= 2 {
            out.push(gluing_check(glue_disk(s, r)));
        }
    }
    for (i, &(a, na)) in circles.iter().enumerate() {
        for &(b, nb) in &circles[i + 1..] {
            let remaining = if a.component == b.component {
                s.components[a.component].circles() - 2
            } else {
                s.components[a.component].circles() + s.components[b.component].circles() - 2
            };
            if na == 0 && nb == 0 && remaining > 0 {
                out.push(gluing_check(circular_glue(s, a, b)));
            }
        }
    }
    out
}

/// The full suite for one surface.
pub fn surface_checks(s: &StoppedSurface) -> Vec<Check> {
    let mut out = Vec::new();
    for c in &s.components {
        out.push(homology_check(c));
        out.extend(arc_check(c));
    }
    out.push(theorem_check(s));
    out.extend(gluing_checks(s));
    out
}

/// Pairs of small surfaces, for gluing across components.
pub fn two_component_grid() -> Vec<StoppedSurface> {
    let small = connected_grid(1, 2, 0, 2);
    let mut out = Vec::new();
    for (i, a) in small.iter().enumerate() {
        for b in &small[i..] {
            out.push(StoppedSurface {
                components: vec![a.clone(), b.clone()],
            });
        }
    }
    out
}

/// Runs the suite on every surface; results keep input order.
pub fn run_suite(surfaces: &[StoppedSurface], exec: Execution) -> Vec<Check> {
    par::map(surfaces, exec, surface_checks).into_iter().flatten().collect()
}

/// The grid behind `verify --grid`: connected surfaces up to the bounds, plus
/// the two-component pairs.
pub fn grid_surfaces(gmax: usize, bmax: usize, smax: usize) -> Vec<StoppedSurface> {
    let mut out: Vec<StoppedSurface> = connected_grid(gmax, bmax, 0, smax)
        .into_iter()
        .map(|c| StoppedSurface { components: vec![c] })
        .collect();
    out.extend(two_component_grid());
    out
}

/// Theorem comparisons on connected surfaces only.
pub fn theorem_sweep(surfaces: &[ConnectedSurface], exec: Execution) -> Vec<Check> {
    par::map(surfaces, exec, |c| {
        theorem_check(&StoppedSurface {
            components: vec![c.clone()],
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distributions_are_multisets() {
        assert_eq!(distributions(2, 2, 2), vec![vec![2, 0], vec![1, 1]]);
        assert_eq!(distributions(3, 0, 0), vec![vec![0, 0, 0]]);
        assert_eq!(connected_grid(0, 1, 1, 4).len(), 4);
    }

    #[test]
    fn small_suite_passes() {
        let checks = run_suite(
            &[StoppedSurface::disk(3), StoppedSurface::cylinder([1, 0])],
            Execution::Sequential,
        );
        assert!(!checks.is_empty());
        for c in &checks {
            assert!(c.passed, "{c}");
        }
    }
}
