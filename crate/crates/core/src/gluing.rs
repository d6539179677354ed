//! Surgeries on stopped surfaces and their effect on the cobordism group.
//!
//! Each operation returns the new surface together with a report comparing the
//! groups before and after against the predicted relation.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::surface::{euler_characteristic, surface_homology, BoundaryCircle, ConnectedSurface, StoppedSurface};

/// A boundary circle: `(component, circle)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CircleRef {
    pub component: usize,
    pub circle: usize,
}

/// A stop: `(component, circle, index)`, stops numbered counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StopRef {
    pub component: usize,
    pub circle: usize,
    pub stop: usize,
}

impl StopRef {
    pub fn circle(&self) -> CircleRef {
        CircleRef {
            component: self.component,
            circle: self.circle,
        }
    }
}

impl fmt::Display for CircleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.component, self.circle)
    }
}

impl fmt::Display for StopRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.component, self.circle, self.stop)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// `before ≅ after`
    Isomorphism,
    /// `before ≅ after`, for a stop added to a stopless component
    Unchanged,
    /// `after ≅ before ⊕ Z`
    AfterSplits,
    /// `before ≅ after ⊕ Z`
    BeforeSplits,
    /// `0 -> Z -> before -> after -> 0`
    ExactSequence,
}

impl Claim {
    fn holds(&self, before: &AbelianGroup, after: &AbelianGroup) -> bool {
        let z = AbelianGroup::free(1);
        match self {
            Claim::Isomorphism | Claim::Unchanged => before == after,
            Claim::AfterSplits => *after == before.direct_sum(&z),
            // with a free quotient the sequence splits
            Claim::BeforeSplits | Claim::ExactSequence => *before == after.direct_sum(&z),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingReport {
    pub operation: String,
    pub before: StoppedSurface,
    pub after: StoppedSurface,
    pub group_before: AbelianGroup,
    pub group_after: AbelianGroup,
    pub claim: Claim,
    pub euler_change: i64,
    pub expected_euler_change: i64,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<GluingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl GluingReport {
    fn new(
        operation: String,
        before: &StoppedSurface,
        after: StoppedSurface,
        claim: Claim,
        expected_euler_change: i64,
    ) -> Result<Self> {
        let group_before = surface_homology(before)?;
        let group_after = surface_homology(&after)?;
        let euler_change = euler_characteristic(&after) - euler_characteristic(before);
        let verdict = claim.holds(&group_before, &group_after) && euler_change == expected_euler_change;
        Ok(GluingReport {
            operation,
            before: before.clone(),
            after,
            group_before,
            group_after,
            claim,
            euler_change,
            expected_euler_change,
            verdict,
            steps: Vec::new(),
            note: None,
        })
    }

    /// The claim with the computed groups filled in.
    pub fn claim_line(&self) -> String {
        let (b, a) = (&self.group_before, &self.group_after);
        match self.claim {
            Claim::Isomorphism => format!("iso case: {b} ≅ {a}"),
            Claim::Unchanged => format!("unchanged: {b}"),
            Claim::AfterSplits => format!("split case: {a} ≅ {b} + Z"),
            Claim::BeforeSplits => format!("split case: {b} ≅ {a} + Z"),
            Claim::ExactSequence => format!("exact sequence: 0 -> Z -> {b} -> {a} -> 0"),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("operation: {}\n", self.operation));
        out.push_str(&format!("before: {}\n", self.before.to_canonical_json()));
        out.push_str(&format!("after: {}\n", self.after.to_canonical_json()));
        out.push_str(&format!("groups: {} -> {}\n", self.group_before, self.group_after));
        out.push_str(&format!(
            "euler change: {} (expected {})\n",
            self.euler_change, self.expected_euler_change
        ));
        for step in &self.steps {
            out.push_str(&format!(
                "step: {}: {} [{}]\n",
                step.operation,
                step.claim_line(),
                if step.verdict { "ok" } else { "FAILED" }
            ));
        }
        if let Some(note) = &self.note {
            out.push_str(&format!("note: {note}\n"));
        }
        out.push_str(&format!("{}\n", self.claim_line()));
        out.push_str(&format!("verdict: {}\n", if self.verdict { "true" } else { "false" }));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn component(s: &StoppedSurface, c: usize) -> Result<&ConnectedSurface> {
    s.components
        .get(c)
        .ok_or_else(|| Error::OutOfRange(format!("component {c} of {}", s.components.len())))
}

fn circle_stops(s: &StoppedSurface, r: CircleRef) -> Result<usize> {
    component(s, r.component)?
        .boundary
        .get(r.circle)
        .map(|b| b.stops)
        .ok_or_else(|| Error::OutOfRange(format!("circle {r}")))
}

fn check_stop(s: &StoppedSurface, q: StopRef) -> Result<()> {
    let stops = circle_stops(s, q.circle())?;
    if q.stop >= stops {
        return Err(Error::NotAStop(format!("{q}: circle carries {stops} stops")));
    }
    Ok(())
}

/// Adds a stop to a circle.
pub fn add_stop(surface: &StoppedSurface, at: CircleRef) -> Result<GluingReport> {
    surface.validate()?;
    circle_stops(surface, at)?;
    let had_stops = surface.components[at.component].stop_count() > 0;
    let mut after = surface.clone();
    after.components[at.component].boundary[at.circle].stops += 1;
    let claim = if had_stops {
        Claim::AfterSplits
    } else {
        Claim::Unchanged
    };
    GluingReport::new(format!("add stop on circle {at}"), surface, after, claim, 0)
}

/// Attaches a one-handle with feet at two stops and removes both stops.
pub fn attach_handle(surface: &StoppedSurface, minus: StopRef, plus: StopRef) -> Result<GluingReport> {
    surface.validate()?;
    check_stop(surface, minus)?;
    check_stop(surface, plus)?;
    if minus == plus {
        return Err(Error::NotAStop(format!("{minus} used for both feet")));
    }
    let mut after = surface.clone();
    let note;
    if minus.component == plus.component && minus.circle == plus.circle {
        let c = &mut after.components[minus.component];
        let s = c.boundary[minus.circle].stops;
        let between = (plus.stop + s - minus.stop - 1) % s;
        c.boundary[minus.circle].stops = between;
        c.boundary.push(BoundaryCircle { stops: s - 2 - between });
        note = Some(format!(
            "feet on one circle: it splits; {between} stops counterclockwise from {minus} to {plus} stay on circle {}",
            minus.circle
        ));
    } else if minus.component == plus.component {
        let c = &mut after.components[minus.component];
        let (lo, hi) = (minus.circle.min(plus.circle), minus.circle.max(plus.circle));
        let merged = c.boundary[lo].stops + c.boundary[hi].stops - 2;
        c.boundary.remove(hi);
        c.boundary[lo].stops = merged;
        c.genus += 1;
        note = None;
    } else {
        let (first, second) = if minus.component < plus.component {
            (minus, plus)
        } else {
            (plus, minus)
        };
        let other = after.components.remove(second.component);
        let c = &mut after.components[first.component];
        let merged = c.boundary[first.circle].stops + other.boundary[second.circle].stops - 2;
        c.boundary[first.circle].stops = merged;
        c.boundary.extend(
            other
                .boundary
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != second.circle)
                .map(|(_, b)| *b),
        );
        c.genus += other.genus;
        note = None;
    }
    let merged_component = minus.component.min(plus.component);
    let claim = if after.components[merged_component].stop_count() > 0 {
        Claim::ExactSequence
    } else {
        Claim::Isomorphism
    };
    let mut report = GluingReport::new(
        format!("attach handle at {minus} and {plus}"),
        surface,
        after,
        claim,
        -1,
    )?;
    report.note = note;
    Ok(report)
}

/// Caps a stopless circle with a disk.
pub fn glue_disk(surface: &StoppedSurface, at: CircleRef) -> Result<GluingReport> {
    surface.validate()?;
    let stops = circle_stops(surface, at)?;
    if stops != 0 {
        return Err(Error::CircleHasStops(stops));
    }
    if surface.components[at.component].circles() < 2 {
        return Err(Error::ClosedResult);
    }
    let mut after = surface.clone();
    after.components[at.component].boundary.remove(at.circle);
    GluingReport::new(
        format!("glue disk to circle {at}"),
        surface,
        after,
        Claim::BeforeSplits,
        1,
    )
}

/// Identifies two stopless circles: stop on each, handle between the new
/// stops, disk on the resulting circle.
pub fn circular_glue(surface: &StoppedSurface, minus: CircleRef, plus: CircleRef) -> Result<GluingReport> {
    surface.validate()?;
    for r in [minus, plus] {
        let stops = circle_stops(surface, r)?;
        if stops != 0 {
            return Err(Error::CircleHasStops(stops));
        }
    }
    if minus == plus {
        return Err(Error::OutOfRange(format!("circle {minus} glued to itself")));
    }
    let connected = minus.component == plus.component;
    let remaining = if connected {
        surface.components[minus.component].circles() - 2
    } else {
        surface.components[minus.component].circles() + surface.components[plus.component].circles() - 2
    };
    if remaining == 0 {
        return Err(Error::ClosedResult);
    }
    let both_stopped =
        surface.components[minus.component].stop_count() > 0 && surface.components[plus.component].stop_count() > 0;
    let claim = if connected || both_stopped {
        Claim::Isomorphism
    } else {
        Claim::BeforeSplits
    };

    let s1 = add_stop(surface, minus)?;
    let s2 = add_stop(&s1.after, plus)?;
    let foot = |r: CircleRef| StopRef {
        component: r.component,
        circle: r.circle,
        stop: 0,
    };
    let s3 = attach_handle(&s2.after, foot(minus), foot(plus))?;
    let merged = CircleRef {
        component: minus.component.min(plus.component),
        circle: if connected {
            minus.circle.min(plus.circle)
        } else if minus.component < plus.component {
            minus.circle
        } else {
            plus.circle
        },
    };
    let s4 = glue_disk(&s3.after, merged)?;

    let direct = direct_circular_glue(surface, minus, plus);
    let mut report = GluingReport::new(
        format!("circular glue of circles {minus} and {plus}"),
        surface,
        s4.after.clone(),
        claim,
        0,
    )?;
    let steps_ok = [&s1, &s2, &s3, &s4].iter().all(|r| r.verdict);
    let composite_ok = direct.canonical() == s4.after.canonical();
    report.verdict &= steps_ok && composite_ok;
    if !composite_ok {
        report.note = Some(format!(
            "composite {} differs from direct rule {}",
            s4.after.to_canonical_json(),
            direct.to_canonical_json()
        ));
    }
    report.steps = vec![s1, s2, s3, s4];
    Ok(report)
}

/// Closed-form effect of a circular gluing on `(genus, circles, stops)`.
fn direct_circular_glue(surface: &StoppedSurface, minus: CircleRef, plus: CircleRef) -> StoppedSurface {
    let mut out = surface.clone();
    if minus.component == plus.component {
        let c = &mut out.components[minus.component];
        let (lo, hi) = (minus.circle.min(plus.circle), minus.circle.max(plus.circle));
        c.boundary.remove(hi);
        c.boundary.remove(lo);
        c.genus += 1;
    } else {
        let (first, second) = if minus.component < plus.component {
            (minus, plus)
        } else {
            (plus, minus)
        };
        let other = out.components.remove(second.component);
        let c = &mut out.components[first.component];
        c.boundary.remove(first.circle);
        c.boundary.extend(
            other
                .boundary
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != second.circle)
                .map(|(_, b)| *b),
        );
        c.genus += other.genus;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(component: usize, circle: usize) -> CircleRef {
        CircleRef { component, circle }
    }

    fn stop(component: usize, circle: usize, stop: usize) -> StopRef {
        StopRef {
            component,
            circle,
            stop,
        }
    }

    fn surface(parts: &[(usize, &[usize])]) -> StoppedSurface {
        StoppedSurface::new(parts.iter().map(|(g, s)| ConnectedSurface::new(*g, s)).collect()).unwrap()
    }

    #[test]
    fn stops() {
        let r = add_stop(&StoppedSurface::disk(1), circle(0, 0)).unwrap();
        assert!(r.verdict);
        assert_eq!((r.group_before.rank(), r.group_after.rank()), (0, 1));
        let r = add_stop(&StoppedSurface::cylinder([0, 0]), circle(0, 0)).unwrap();
        assert_eq!(r.claim, Claim::Unchanged);
        assert_eq!(r.claim_line(), "unchanged: Z^1");
        assert!(r.verdict);
    }

    #[test]
    fn handles() {
        let r = attach_handle(&StoppedSurface::disk(2), stop(0, 0, 0), stop(0, 0, 1)).unwrap();
        assert_eq!(r.after, StoppedSurface::cylinder([0, 0]));
        assert_eq!(r.claim_line(), "iso case: Z^1 ≅ Z^1");
        assert!(r.verdict);
        let r = attach_handle(&StoppedSurface::disk(3), stop(0, 0, 0), stop(0, 0, 1)).unwrap();
        assert_eq!(r.after.canonical(), StoppedSurface::cylinder([0, 1]).canonical());
        assert_eq!(r.claim, Claim::ExactSequence);
        assert!(r.verdict);
        let two = surface(&[(0, &[1]), (0, &[1])]);
        let r = attach_handle(&two, stop(0, 0, 0), stop(1, 0, 0)).unwrap();
        assert_eq!(r.after, StoppedSurface::disk(0));
        assert!(r.verdict);
        assert!(matches!(
            attach_handle(&StoppedSurface::disk(1), stop(0, 0, 0), stop(0, 0, 1)),
            Err(Error::NotAStop(_))
        ));
    }

    #[test]
    fn disks() {
        let r = glue_disk(&StoppedSurface::cylinder([1, 0]), circle(0, 1)).unwrap();
        assert_eq!(r.after, StoppedSurface::disk(1));
        assert!(r.verdict);
        let pants = surface(&[(0, &[1, 0, 0])]);
        let r = glue_disk(&pants, circle(0, 2)).unwrap();
        assert_eq!((r.group_before.rank(), r.group_after.rank()), (2, 1));
        assert_eq!(
            glue_disk(&StoppedSurface::disk(0), circle(0, 0)).unwrap_err(),
            Error::ClosedResult
        );
        assert_eq!(glue_disk(&pants, circle(0, 0)).unwrap_err(), Error::CircleHasStops(1));
    }

    #[test]
    fn circular() {
        let pants = surface(&[(0, &[0, 0, 0])]);
        let r = circular_glue(&pants, circle(0, 0), circle(0, 1)).unwrap();
        assert_eq!(r.after, surface(&[(1, &[0])]));
        assert_eq!(r.claim_line(), "iso case: Z^2 ≅ Z^2");
        assert!(r.verdict, "{}", r.render());
        let cyls = surface(&[(0, &[0, 0]), (0, &[0, 0])]);
        let r = circular_glue(&cyls, circle(0, 1), circle(1, 0)).unwrap();
        assert_eq!(r.after, StoppedSurface::cylinder([0, 0]));
        assert_eq!(r.claim, Claim::BeforeSplits);
        assert!(r.verdict, "{}", r.render());
        assert_eq!(
            circular_glue(&StoppedSurface::cylinder([0, 0]), circle(0, 0), circle(0, 1)).unwrap_err(),
            Error::ClosedResult
        );
    }
}
