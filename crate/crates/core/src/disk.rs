//! The partially wrapped category of the disk with `n + 1` boundary stops.
//!
//! Stops are numbered `0..=n` counterclockwise and segment `j` is the boundary
//! interval between stop `j - 1` and stop `j`. The linking disk `D_j` runs from
//! segment `j` to segment `j + 1` around stop `j`, and the Reeb chord
//! `a_j: D_j -> D_{j+1}` follows the boundary. All indices are mod `n + 1`.

use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::cone::{ConeExpr, ConeStatement, ExactTriangle, GradedObject, IteratedDecomposition, Morphism};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StoppedDisk {
    pub n: usize,
}

impl StoppedDisk {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::OutOfRange("a stopped disk needs at least two stops".into()));
        }
        Ok(StoppedDisk { n })
    }

    pub fn stops(&self) -> usize {
        self.n + 1
    }

    pub fn segments(&self) -> usize {
        self.n + 1
    }
}

/// An arc up to isotopy, with a constant grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiskArc {
    pub name: String,
    /// segment indices, sorted
    pub ends: (usize, usize),
    pub grading: Rational64,
}

impl DiskArc {
    pub fn new(name: impl Into<String>, a: usize, b: usize, grading: Rational64) -> Self {
        DiskArc {
            name: name.into(),
            ends: (a.min(b), a.max(b)),
            grading,
        }
    }
}

impl fmt::Display for DiskArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: segments {}-{}, grading {}",
            self.name, self.ends.0, self.ends.1, self.grading
        )
    }
}

pub fn is_zero_object(arc: &DiskArc) -> bool {
    arc.ends.0 == arc.ends.1
}

pub fn linking_disks(n: usize) -> Result<Vec<DiskArc>> {
    linking_disks_graded(&standard_gradings(n)?)
}

pub fn linking_disks_graded(g: &GradingAssignment) -> Result<Vec<DiskArc>> {
    let n = g.n();
    StoppedDisk::new(n)?;
    Ok((0..=n)
        .map(|j| DiskArc::new(format!("D{j}"), j, (j + 1) % (n + 1), g.d[j]))
        .collect())
}

/// One constant grading per linking disk.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradingAssignment {
    d: Vec<Rational64>,
}

impl GradingAssignment {
    pub fn new(d: Vec<Rational64>) -> Result<Self> {
        if d.len() < 2 {
            return Err(Error::OutOfRange(format!(
                "need a grading for each of at least two disks, got {}",
                d.len()
            )));
        }
        Ok(GradingAssignment { d })
    }

    pub fn n(&self) -> usize {
        self.d.len() - 1
    }

    pub fn values(&self) -> &[Rational64] {
        &self.d
    }

    /// `|a_j| = ceil(d_{j+1} - d_j)`.
    pub fn degrees(&self) -> Vec<i64> {
        (0..self.d.len()).map(|j| degree_of(self, j)).collect()
    }

    pub fn degree_sum(&self) -> i64 {
        self.degrees().iter().sum()
    }

    /// The degree vector allows the full-cycle composition.
    pub fn is_compatible(&self) -> bool {
        self.degree_sum() == self.n() as i64 - 1
    }

    /// Parses `standard`, `triangle`, or comma separated rationals.
    pub fn parse(spec: &str, n: usize) -> Result<Self> {
        match spec {
            "standard" => standard_gradings(n),
            "triangle" if n == 2 => Ok(triangle_gradings_w2()),
            "triangle" => Err(Error::OutOfRange(format!(
                "triangle gradings need n = 2 (three stops), got n = {n}"
            ))),
            list => {
                let d = list
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<Rational64>()
                            .map_err(|_| Error::Parse(format!("not a rational: {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if d.len() != n + 1 {
                    return Err(Error::Parse(format!("expected {} gradings, got {}", n + 1, d.len())));
                }
                Self::new(d)
            }
        }
    }
}

fn degree_of(g: &GradingAssignment, j: usize) -> i64 {
    let k = g.d.len();
    (g.d[(j + 1) % k] - g.d[j % k]).ceil().to_integer()
}

pub fn degree(j: usize, g: &GradingAssignment) -> Result<i64> {
    if j > g.n() {
        return Err(Error::OutOfRange(format!("chord a{j} with n = {}", g.n())));
    }
    Ok(degree_of(g, j))
}

/// `d_0 = 0`, `d_j = (2(j - 1) - (n - 1)) / (2n)`; degrees `(0, 1, ..., 1, 0)`.
pub fn standard_gradings(n: usize) -> Result<GradingAssignment> {
    StoppedDisk::new(n)?;
    let n = n as i64;
    let mut d = vec![Rational64::from_integer(0)];
    d.extend((1..=n).map(|j| Rational64::new(2 * (j - 1) - (n - 1), 2 * n)));
    GradingAssignment::new(d)
}

/// `(0, 1/2, 1/4)`, with degrees `(1, 0, 0)`.
pub fn triangle_gradings_w2() -> GradingAssignment {
    GradingAssignment {
        d: vec![Rational64::new(0, 1), Rational64::new(1, 2), Rational64::new(1, 4)],
    }
}

pub fn hom_rank(j: usize, k: usize, n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::DiskTooSmall(n));
    }
    let m = n + 1;
    let (j, k) = (j % m, k % m);
    Ok(usize::from(k == j || k == (j + 1) % m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MorphismGenerator {
    Identity(usize),
    /// `a_j: D_j -> D_{j+1}`
    Chord(usize),
}

impl MorphismGenerator {
    pub fn source(&self) -> usize {
        match *self {
            MorphismGenerator::Identity(j) | MorphismGenerator::Chord(j) => j,
        }
    }

    pub fn target(&self, n: usize) -> usize {
        match *self {
            MorphismGenerator::Identity(j) => j,
            MorphismGenerator::Chord(j) => (j + 1) % (n + 1),
        }
    }

    pub fn degree(&self, g: &GradingAssignment) -> i64 {
        match *self {
            MorphismGenerator::Identity(_) => 0,
            MorphismGenerator::Chord(j) => degree_of(g, j),
        }
    }

    fn is_identity(&self) -> bool {
        matches!(self, MorphismGenerator::Identity(_))
    }
}

impl fmt::Display for MorphismGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismGenerator::Identity(j) => write!(f, "1_D{j}"),
            MorphismGenerator::Chord(j) => write!(f, "a{j}"),
        }
    }
}

/// `mu^k(x_k, ..., x_1)`, inputs listed left to right as written, composable
/// right to left. `None` is the zero morphism.
pub fn mu(inputs: &[MorphismGenerator], g: &GradingAssignment) -> Result<Option<MorphismGenerator>> {
    let n = g.n();
    if n < 2 {
        return Err(Error::DiskTooSmall(n));
    }
    if inputs.is_empty() {
        return Err(Error::NotComposable("mu needs at least one input".into()));
    }
    for x in inputs {
        if x.source() > n {
            return Err(Error::OutOfRange(format!("{x} with n = {n}")));
        }
    }
    for w in inputs.windows(2) {
        if w[0].source() != w[1].target(n) {
            return Err(Error::NotComposable(format!(
                "{} does not start where {} ends",
                w[0], w[1]
            )));
        }
    }
    let k = inputs.len();
    if k == 1 {
        return Ok(None);
    }
    if k == 2 {
        return Ok(match (inputs[0], inputs[1]) {
            (a, b) if a.is_identity() => Some(b),
            (a, b) if b.is_identity() => Some(a),
            _ => None,
        });
    }
    if inputs.iter().any(MorphismGenerator::is_identity) {
        return Ok(None);
    }
    let sum: i64 = inputs.iter().map(|x| x.degree(g)).sum();
    if k == n + 1 && sum == n as i64 - 1 {
        return Ok(Some(MorphismGenerator::Identity(inputs[k - 1].source())));
    }
    Ok(None)
}

/// The cycle `(a_{j+n}, ..., a_{j+1}, a_j)`.
pub fn full_cycle(j: usize, n: usize) -> Vec<MorphismGenerator> {
    (0..=n)
        .rev()
        .map(|k| MorphismGenerator::Chord((j + k) % (n + 1)))
        .collect()
}

fn d(j: usize) -> GradedObject {
    GradedObject::plain(format!("D{j}"))
}

/// `D1 -a1-> D2 -a2-> D0 -a0-> D1[1]` in the three-stop disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalTriangle {
    pub triangle: ExactTriangle,
    pub statements: [ConeStatement; 3],
}

pub fn universal_triangle() -> UniversalTriangle {
    let triangle = ExactTriangle {
        objects: [d(1), d(2), d(0)],
        morphisms: [Morphism::new("a1"), Morphism::new("a2"), Morphism::new("a0")],
    };
    let once = triangle.rotate();
    let twice = once.rotate().shift(-1);
    UniversalTriangle {
        statements: [triangle.statement(), once.statement(), twice.statement()],
        triangle,
    }
}

/// `D0 ≅ [D1[-1] -> [D2[-1] -> ... -> [D_{n-1}[-1] -> D_n]]]` with the
/// intermediate arcs `alpha_j` (ends on segments 0 and j) that build it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalDecomposition {
    pub decomposition: IteratedDecomposition,
    pub intermediate: Vec<DiskArc>,
    /// `alpha_{j-1} ≅ [D_{j-1}[-1] -> alpha_j]` for `j = 2..=n`
    pub steps: Vec<ConeStatement>,
}

pub fn universal_decomposition(n: usize) -> Result<UniversalDecomposition> {
    let g = standard_gradings(n)?;
    let parts = (1..=n).rev().map(d).collect();
    let decomposition = IteratedDecomposition::new(d(0), parts)?;
    let (first, last) = (g.d[0], g.d[n]);
    let intermediate = (1..=n)
        .map(|j| {
            let grading = if n == 1 {
                first
            } else {
                first + (last - first) * Rational64::new(j as i64 - 1, n as i64 - 1)
            };
            DiskArc::new(format!("alpha{j}"), 0, j, grading)
        })
        .collect();
    let steps = (2..=n)
        .map(|j| ConeStatement {
            object: GradedObject::plain(format!("alpha{}", j - 1)),
            cone: ConeExpr::cone(
                ConeExpr::Leaf(d(j - 1).shifted(-1)),
                ConeExpr::leaf(format!("alpha{j}"), 0),
            ),
        })
        .collect();
    Ok(UniversalDecomposition {
        decomposition,
        intermediate,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{k0_class, left_associate, rotate};

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn linking_disks_are_nonzero() {
        let ds = linking_disks(2).unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds[2].ends, (0, 2));
        assert!(ds.iter().all(|a| !is_zero_object(a)));
        assert_eq!(linking_disks(1).unwrap().len(), 2);
        assert!(is_zero_object(&DiskArc::new("x", 2, 2, r(0, 1))));
    }

    #[test]
    fn hom_ranks() {
        assert_eq!(hom_rank(1, 1, 4).unwrap(), 1);
        assert_eq!(hom_rank(0, 2, 4).unwrap(), 0);
        assert_eq!(hom_rank(4, 0, 4).unwrap(), 1);
        assert_eq!(hom_rank(0, 1, 1).unwrap_err(), Error::DiskTooSmall(1));
    }

    #[test]
    fn gradings() {
        let g2 = standard_gradings(2).unwrap();
        assert_eq!(g2.values(), &[r(0, 1), r(-1, 4), r(1, 4)]);
        assert_eq!(g2.degrees(), vec![0, 1, 0]);
        assert_eq!(
            standard_gradings(3).unwrap().values(),
            &[r(0, 1), r(-1, 3), r(0, 1), r(1, 3)]
        );
        assert_eq!(standard_gradings(3).unwrap().degrees(), vec![0, 1, 1, 0]);
        assert_eq!(standard_gradings(1).unwrap().degrees(), vec![0, 0]);
        assert_eq!(triangle_gradings_w2().degrees(), vec![1, 0, 0]);
        let half = GradingAssignment::new(vec![r(0, 1), r(1, 2)]).unwrap();
        assert_eq!(degree(0, &half).unwrap(), 1);
    }

    #[test]
    fn compositions() {
        let t = triangle_gradings_w2();
        use MorphismGenerator::*;
        assert_eq!(mu(&[Identity(1), Chord(0)], &t).unwrap(), Some(Chord(0)));
        assert_eq!(mu(&[Chord(2), Chord(1), Chord(0)], &t).unwrap(), Some(Identity(0)));
        assert_eq!(full_cycle(0, 2), vec![Chord(2), Chord(1), Chord(0)]);
        let bad = GradingAssignment::new(vec![r(0, 1), r(1, 2), r(3, 4)]).unwrap();
        assert_eq!(bad.degree_sum(), 2);
        assert_eq!(mu(&[Chord(2), Chord(1), Chord(0)], &bad).unwrap(), None);
        assert!(matches!(mu(&[Chord(0), Chord(1)], &t), Err(Error::NotComposable(_))));
        assert_eq!(mu(&[Chord(2), Identity(2), Chord(1)], &t).unwrap(), None);
    }

    #[test]
    fn triangle_statements() {
        let u = universal_triangle();
        let s: Vec<String> = u.statements.iter().map(ToString::to_string).collect();
        assert_eq!(s[0], "D0 ≅ [D1 -a1-> D2]");
        assert_eq!(s[1], "D1[1] ≅ [D2 -a2-> D0]");
        assert_eq!(s[2], "D2 ≅ [D0[-1] --a0[-1]-> D1]");
        assert_eq!(k0_class(&u.statements[0].cone).to_string(), "D2 - D1");
        assert!(rotate(&u.statements[0].cone).is_err());
    }

    #[test]
    fn decompositions() {
        let u2 = universal_decomposition(2).unwrap();
        assert_eq!(u2.decomposition.to_string(), "D0 ≅ [D1[-1] -> D2]");
        assert_eq!(universal_decomposition(1).unwrap().decomposition.to_string(), "D0 ≅ D1");
        let u3 = universal_decomposition(3).unwrap();
        assert_eq!(u3.decomposition.to_string(), "D0 ≅ [D1[-1] -> [D2[-1] -> D3]]");
        assert_eq!(
            left_associate(&u3.decomposition).to_string(),
            "[[D1[-2] -> D2[-1]] -> D3]"
        );
        assert_eq!(u3.intermediate[0].ends, (0, 1));
        assert_eq!(u3.intermediate[2].ends, (0, 3));
        assert_eq!(u3.steps[0].to_string(), "alpha1 ≅ [D1[-1] -> alpha2]");
    }
}
