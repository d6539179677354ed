//! Shifted iterated mapping cones and their classes in the Grothendieck group.
//!
//! `[X -> Y]` is the cone of a morphism `X -> Y`; its class is `Y - X`. A shift
//! `A[k]` has class `(-1)^k A`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::Triangulation;

/// `label[shift]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradedObject {
    pub label: String,
    pub shift: i64,
}

impl GradedObject {
    pub fn new(label: impl Into<String>, shift: i64) -> Self {
        GradedObject {
            label: label.into(),
            shift,
        }
    }

    pub fn plain(label: impl Into<String>) -> Self {
        Self::new(label, 0)
    }

    pub fn shifted(&self, k: i64) -> Self {
        Self::new(self.label.clone(), self.shift + k)
    }

    pub fn class(&self) -> K0Class {
        K0Class::single(&self.label, if self.shift % 2 == 0 { 1 } else { -1 })
    }
}

impl fmt::Display for GradedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_shifted(f, &self.label, self.shift)
    }
}

fn write_shifted(f: &mut fmt::Formatter<'_>, label: &str, shift: i64) -> fmt::Result {
    if shift == 0 {
        write!(f, "{label}")
    } else {
        write!(f, "{label}[{shift}]")
    }
}

/// A morphism label: `f`, `-f`, `f[k]`. Carried for printing only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub label: String,
    pub shift: i64,
    pub negated: bool,
}

impl Morphism {
    pub fn new(label: impl Into<String>) -> Self {
        Morphism {
            label: label.into(),
            shift: 0,
            negated: false,
        }
    }

    pub fn negate(&self) -> Self {
        Morphism {
            negated: !self.negated,
            ..self.clone()
        }
    }

    pub fn shifted(&self, k: i64) -> Self {
        Morphism {
            shift: self.shift + k,
            ..self.clone()
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "-")?;
        }
        write_shifted(f, &self.label, self.shift)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConeExpr {
    Leaf(GradedObject),
    Cone {
        src: Box<ConeExpr>,
        tgt: Box<ConeExpr>,
        morphism: Option<Morphism>,
    },
}

impl ConeExpr {
    pub fn leaf(label: impl Into<String>, shift: i64) -> Self {
        ConeExpr::Leaf(GradedObject::new(label, shift))
    }

    pub fn cone(src: ConeExpr, tgt: ConeExpr) -> Self {
        ConeExpr::Cone {
            src: Box::new(src),
            tgt: Box::new(tgt),
            morphism: None,
        }
    }

    pub fn cone_with(src: ConeExpr, tgt: ConeExpr, morphism: Morphism) -> Self {
        ConeExpr::Cone {
            src: Box::new(src),
            tgt: Box::new(tgt),
            morphism: Some(morphism),
        }
    }

    pub fn leaves(&self) -> Vec<&GradedObject> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a GradedObject>) {
        match self {
            ConeExpr::Leaf(g) => out.push(g),
            ConeExpr::Cone { src, tgt, .. } => {
                src.collect_leaves(out);
                tgt.collect_leaves(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ConeExpr::Leaf(_) => 0,
            ConeExpr::Cone { src, tgt, .. } => 1 + src.depth().max(tgt.depth()),
        }
    }

    /// Number of cone nodes.
    pub fn cone_count(&self) -> usize {
        match self {
            ConeExpr::Leaf(_) => 0,
            ConeExpr::Cone { src, tgt, .. } => 1 + src.cone_count() + tgt.cone_count(),
        }
    }
}

impl fmt::Display for ConeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeExpr::Leaf(g) => write!(f, "{g}"),
            ConeExpr::Cone { src, tgt, morphism } => match morphism {
                Some(m) => write!(f, "[{src} -{m}-> {tgt}]"),
                None => write!(f, "[{src} -> {tgt}]"),
            },
        }
    }
}

/// `[X -> Y][k] = [X[k] -> Y[k]]`.
pub fn shift_expr(e: &ConeExpr, k: i64) -> ConeExpr {
    match e {
        ConeExpr::Leaf(g) => ConeExpr::Leaf(g.shifted(k)),
        ConeExpr::Cone { src, tgt, morphism } => ConeExpr::Cone {
            src: Box::new(shift_expr(src, k)),
            tgt: Box::new(shift_expr(tgt, k)),
            morphism: morphism.as_ref().map(|m| m.shifted(k)),
        },
    }
}

/// Integer combination of labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct K0Class(BTreeMap<String, i64>);

impl K0Class {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(label: &str, coefficient: i64) -> Self {
        let mut c = Self::zero();
        c.add_term(label, coefficient);
        c
    }

    pub fn add_term(&mut self, label: &str, coefficient: i64) {
        let entry = self.0.entry(label.to_string()).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.0.remove(label);
        }
    }

    pub fn coefficient(&self, label: &str) -> i64 {
        self.0.get(label).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<String, i64> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        K0Class(self.0.iter().map(|(l, &c)| (l.clone(), c * k)).collect())
    }

    /// Replaces every occurrence of `label` by `by`.
    pub fn substitute(&self, label: &str, by: &K0Class) -> Self {
        let mut out = self.clone();
        let c = out.coefficient(label);
        out.add_term(label, -c);
        out + by.scale(c)
    }

    /// Sum written with signs, in label order: `A + B - C`.
    pub fn to_string_ordered(&self, order: &[&str]) -> String {
        let mut labels: Vec<&str> = order.iter().copied().filter(|l| self.0.contains_key(*l)).collect();
        labels.extend(self.0.keys().map(String::as_str).filter(|l| !order.contains(l)));
        format_terms(labels.into_iter().map(|l| (l, self.0[l])))
    }
}

fn format_terms<'a>(terms: impl Iterator<Item = (&'a str, i64)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if mag != 1 {
            out.push_str(&mag.to_string());
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Positive terms first, each group in label order.
impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos = self.0.iter().filter(|(_, &c)| c > 0);
        let neg = self.0.iter().filter(|(_, &c)| c < 0);
        write!(f, "{}", format_terms(pos.chain(neg).map(|(l, &c)| (l.as_str(), c))))
    }
}

impl Add for K0Class {
    type Output = K0Class;
    fn add(mut self, rhs: K0Class) -> K0Class {
        for (l, c) in rhs.0 {
            self.add_term(&l, c);
        }
        self
    }
}

impl Sub for K0Class {
    type Output = K0Class;
    fn sub(self, rhs: K0Class) -> K0Class {
        self + (-rhs)
    }
}

impl Neg for K0Class {
    type Output = K0Class;
    fn neg(self) -> K0Class {
        self.scale(-1)
    }
}

pub fn k0_class(e: &ConeExpr) -> K0Class {
    match e {
        ConeExpr::Leaf(g) => g.class(),
        ConeExpr::Cone { src, tgt, .. } => k0_class(tgt) - k0_class(src),
    }
}

/// `[[X -> Y] -> Z]` to `[X[1] -> [Y -> Z]]`.
pub fn rotate(e: &ConeExpr) -> Result<ConeExpr> {
    match e {
        ConeExpr::Cone {
            src,
            tgt: z,
            morphism: g,
        } => match src.as_ref() {
            ConeExpr::Cone {
                src: x,
                tgt: y,
                morphism: f,
            } => Ok(ConeExpr::Cone {
                src: Box::new(shift_expr(x, 1)),
                tgt: Box::new(ConeExpr::Cone {
                    src: y.clone(),
                    tgt: z.clone(),
                    morphism: g.clone(),
                }),
                morphism: f.clone(),
            }),
            _ => Err(Error::ShapeMismatch(format!("{e} is not of the form [[X -> Y] -> Z]"))),
        },
        _ => Err(Error::ShapeMismatch(format!("{e} is not a cone"))),
    }
}

/// `[X[1] -> [Y -> Z]]` to `[[X -> Y] -> Z]`.
pub fn unrotate(e: &ConeExpr) -> Result<ConeExpr> {
    match e {
        ConeExpr::Cone {
            src: x1,
            tgt,
            morphism: f,
        } => match tgt.as_ref() {
            ConeExpr::Cone {
                src: y,
                tgt: z,
                morphism: g,
            } => Ok(ConeExpr::Cone {
                src: Box::new(ConeExpr::Cone {
                    src: Box::new(shift_expr(x1, -1)),
                    tgt: y.clone(),
                    morphism: f.clone(),
                }),
                tgt: z.clone(),
                morphism: g.clone(),
            }),
            _ => Err(Error::ShapeMismatch(format!("{e} is not of the form [X -> [Y -> Z]]"))),
        },
        _ => Err(Error::ShapeMismatch(format!("{e} is not a cone"))),
    }
}

/// `target ≅ [A_n[-1] -> [... -> [A_2[-1] -> A_1]]]`, parts stored as
/// `A_1, ..., A_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IteratedDecomposition {
    pub target: GradedObject,
    pub parts: Vec<GradedObject>,
}

impl IteratedDecomposition {
    pub fn new(target: GradedObject, parts: Vec<GradedObject>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::ShapeMismatch("a decomposition needs at least one part".into()));
        }
        Ok(IteratedDecomposition { target, parts })
    }

    pub fn expr(&self) -> ConeExpr {
        let mut e = ConeExpr::Leaf(self.parts[0].clone());
        for part in &self.parts[1..] {
            e = ConeExpr::cone(ConeExpr::Leaf(part.shifted(-1)), e);
        }
        e
    }

    /// `target - class(expr)`; zero in K0.
    pub fn relation(&self) -> K0Class {
        self.target.class() - k0_class(&self.expr())
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for IteratedDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≅ {}", self.target, self.expr())
    }
}

/// Makes the last part the target: `A_n ≅ [A_{n-1} -> [... -> [A_1 -> A]]]`.
pub fn rotate_decomposition(d: &IteratedDecomposition) -> IteratedDecomposition {
    let n = d.parts.len();
    let mut parts = vec![d.target.clone()];
    parts.extend(d.parts[..n - 1].iter().map(|p| p.shifted(1)));
    IteratedDecomposition {
        target: d.parts[n - 1].clone(),
        parts,
    }
}

/// Substitutes `inner` for part `index` (0-based) of `outer`.
pub fn compose_decompositions(
    outer: &IteratedDecomposition,
    index: usize,
    inner: &IteratedDecomposition,
) -> Result<IteratedDecomposition> {
    let part = outer
        .parts
        .get(index)
        .ok_or_else(|| Error::OutOfRange(format!("part {index} of {}", outer.parts.len())))?;
    if *part != inner.target {
        return Err(Error::LabelMismatch {
            expected: part.to_string(),
            found: inner.target.to_string(),
        });
    }
    let mut parts = outer.parts[..index].to_vec();
    parts.extend(inner.parts.iter().cloned());
    parts.extend(outer.parts[index + 1..].iter().cloned());
    Ok(IteratedDecomposition {
        target: outer.target.clone(),
        parts,
    })
}

/// Moves every bracket to the left by repeated inverse rotation at the root.
pub fn left_associate(d: &IteratedDecomposition) -> ConeExpr {
    let mut e = d.expr();
    while let Ok(next) = unrotate(&e) {
        e = next;
    }
    e
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipDirection {
    /// `[X -> [Y -> Z]]` to `[[X' -> Y] -> Z]`
    ToLeft,
    /// `[[X -> Y] -> Z]` to `[X' -> [Y -> Z]]`
    ToRight,
}

/// Re-brackets the cone node at `position` (pre-order index among cone nodes).
pub fn bracket_flip(e: &ConeExpr, position: usize, direction: FlipDirection) -> Result<ConeExpr> {
    fn go(e: &ConeExpr, pos: &mut usize, dir: FlipDirection) -> Option<Result<ConeExpr>> {
        let ConeExpr::Cone { src, tgt, morphism } = e else {
            return None;
        };
        if *pos == 0 {
            return Some(match dir {
                FlipDirection::ToLeft => unrotate(e),
                FlipDirection::ToRight => rotate(e),
            });
        }
        *pos -= 1;
        if let Some(r) = go(src, pos, dir) {
            return Some(r.map(|s| ConeExpr::Cone {
                src: Box::new(s),
                tgt: tgt.clone(),
                morphism: morphism.clone(),
            }));
        }
        go(tgt, pos, dir).map(|r| {
            r.map(|t| ConeExpr::Cone {
                src: src.clone(),
                tgt: Box::new(t),
                morphism: morphism.clone(),
            })
        })
    }
    let mut pos = position;
    go(e, &mut pos, direction).unwrap_or_else(|| {
        Err(Error::OutOfRange(format!(
            "cone position {position} of {}",
            e.cone_count()
        )))
    })
}

/// The triangulation of the `(n+1)`-gon dual to a bracketing of `n` leaves: a
/// subexpression spanning leaves `i..=j` is the chord `(i, j + 1)`.
pub fn dual_triangulation(e: &ConeExpr) -> Result<Triangulation> {
    fn spans(e: &ConeExpr, start: usize, out: &mut Vec<(usize, usize)>) -> usize {
        match e {
            ConeExpr::Leaf(_) => 1,
            ConeExpr::Cone { src, tgt, .. } => {
                let a = spans(src, start, out);
                let b = spans(tgt, start + a, out);
                out.push((start, start + a + b));
                a + b
            }
        }
    }
    let mut chords = Vec::new();
    let n = spans(e, 0, &mut chords);
    chords.pop();
    Triangulation::new(n + 1, chords)
}

/// An exact triangle `X -f-> Y -g-> Z -h-> X[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactTriangle {
    pub objects: [GradedObject; 3],
    pub morphisms: [Morphism; 3],
}

impl ExactTriangle {
    /// `Y -g-> Z -h-> X[1] -(-f[1])-> Y[1]`.
    pub fn rotate(&self) -> Self {
        let [x, y, z] = self.objects.clone();
        let [f, g, h] = self.morphisms.clone();
        ExactTriangle {
            objects: [y, z, x.shifted(1)],
            morphisms: [g, h, f.shifted(1).negate()],
        }
    }

    /// Shifts every object by `k`; odd shifts negate the morphisms.
    pub fn shift(&self, k: i64) -> Self {
        let flip = |m: &Morphism| {
            let m = m.shifted(k);
            if k % 2 == 0 {
                m
            } else {
                m.negate()
            }
        };
        ExactTriangle {
            objects: self.objects.clone().map(|o| o.shifted(k)),
            morphisms: [
                flip(&self.morphisms[0]),
                flip(&self.morphisms[1]),
                flip(&self.morphisms[2]),
            ],
        }
    }

    /// `Z ≅ [X -f-> Y]`.
    pub fn statement(&self) -> ConeStatement {
        let [x, y, z] = &self.objects;
        ConeStatement {
            object: z.clone(),
            cone: ConeExpr::cone_with(
                ConeExpr::Leaf(x.clone()),
                ConeExpr::Leaf(y.clone()),
                self.morphisms[0].clone(),
            ),
        }
    }
}

/// `object ≅ cone`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeStatement {
    pub object: GradedObject,
    pub cone: ConeExpr,
}

impl ConeStatement {
    pub fn relation(&self) -> K0Class {
        self.object.class() - k0_class(&self.cone)
    }
}

impl fmt::Display for ConeStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≅ {}", self.object, self.cone)
    }
}

// grammar: expr := leaf | '[' expr arrow expr ']'
//          leaf := ident ('[' int ']')?
//          arrow := '->' | '-' morphism '->'
//          morphism := '-'? leaf

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at byte {} of {:?}",
            self.i,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        let start = self.i;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' || c == b'\'' {
                self.i += 1;
            } else {
                break;
            }
        }
        if start == self.i {
            return Err(self.err("expected a label"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.i]).into_owned())
    }

    fn shift(&mut self) -> Result<i64> {
        if !self.eat(b'[') {
            return Ok(0);
        }
        let start = self.i;
        self.eat(b'-');
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        let k = std::str::from_utf8(&self.s[start..self.i])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err("expected an integer shift"))?;
        if !self.eat(b']') {
            return Err(self.err("expected ']'"));
        }
        Ok(k)
    }

    fn expr(&mut self) -> Result<ConeExpr> {
        self.ws();
        if self.eat(b'[') {
            let src = self.expr()?;
            self.ws();
            if !self.eat(b'-') {
                return Err(self.err("expected an arrow"));
            }
            let morphism = if self.eat(b'>') {
                None
            } else {
                let negated = self.eat(b'-');
                let label = self.ident()?;
                let shift = self.shift()?;
                if !(self.eat(b'-') && self.eat(b'>')) {
                    return Err(self.err("expected '->' after morphism label"));
                }
                Some(Morphism { label, shift, negated })
            };
            let tgt = self.expr()?;
            self.ws();
            if !self.eat(b']') {
                return Err(self.err("expected ']'"));
            }
            Ok(ConeExpr::Cone {
                src: Box::new(src),
                tgt: Box::new(tgt),
                morphism,
            })
        } else {
            let label = self.ident()?;
            let shift = self.shift()?;
            Ok(ConeExpr::leaf(label, shift))
        }
    }
}

impl FromStr for ConeExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), i: 0 };
        let e = p.expr()?;
        p.ws();
        if p.i != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> ConeExpr {
        s.parse().unwrap()
    }

    fn parts(labels: &[&str]) -> Vec<GradedObject> {
        labels.iter().map(|l| GradedObject::plain(*l)).collect()
    }

    #[test]
    fn shifting() {
        assert_eq!(shift_expr(&parse("A"), 1).to_string(), "A[1]");
        assert_eq!(shift_expr(&parse("[X -> Y]"), -1).to_string(), "[X[-1] -> Y[-1]]");
        let e = parse("[[X -> Y[2]] -f-> Z]");
        assert_eq!(shift_expr(&shift_expr(&e, 2), -2), e);
    }

    #[test]
    fn classes() {
        assert_eq!(k0_class(&parse("[A2[-1] -> A1]")).to_string(), "A1 + A2");
        assert_eq!(k0_class(&parse("A[1]")).to_string(), "-A");
        assert_eq!(k0_class(&parse("[B -> A]")).to_string(), "A - B");
        let c = k0_class(&parse("[[X -> Y] -> Z]"));
        assert_eq!(c.to_string_ordered(&["X", "Y", "Z"]), "X - Y + Z");
    }

    #[test]
    fn rotation() {
        let e = parse("[[X -> Y] -> Z]");
        let r = rotate(&e).unwrap();
        assert_eq!(r.to_string(), "[X[1] -> [Y -> Z]]");
        assert_eq!(unrotate(&r).unwrap(), e);
        assert_eq!(k0_class(&r), k0_class(&e));
        assert!(matches!(rotate(&parse("[X -> Y]")), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn decomposition_rotation() {
        let d = IteratedDecomposition::new(GradedObject::plain("A"), parts(&["A1", "A2"])).unwrap();
        assert_eq!(d.to_string(), "A ≅ [A2[-1] -> A1]");
        let r = rotate_decomposition(&d);
        assert_eq!(r.to_string(), "A2 ≅ [A1 -> A]");
        assert_eq!(r.relation(), -d.relation());
        let one = IteratedDecomposition::new(GradedObject::plain("A"), parts(&["A1"])).unwrap();
        assert_eq!(rotate_decomposition(&one).to_string(), "A1 ≅ A");
        let d3 = IteratedDecomposition::new(GradedObject::plain("A"), parts(&["A1", "A2", "A3"])).unwrap();
        assert_eq!(rotate_decomposition(&d3).to_string(), "A3 ≅ [A2 -> [A1 -> A]]");
    }

    #[test]
    fn composition() {
        let outer = IteratedDecomposition::new(GradedObject::plain("A"), parts(&["A1", "A2"])).unwrap();
        let inner = IteratedDecomposition::new(GradedObject::plain("A2"), parts(&["B1", "B2"])).unwrap();
        let c = compose_decompositions(&outer, 1, &inner).unwrap();
        assert_eq!(c.parts, parts(&["A1", "B1", "B2"]));
        assert_eq!(
            c.relation(),
            outer
                .relation()
                .substitute("A2", &(-inner.relation() + K0Class::single("A2", 1)))
        );
        let trivial = IteratedDecomposition::new(GradedObject::plain("A2"), parts(&["A2"])).unwrap();
        assert_eq!(compose_decompositions(&outer, 1, &trivial).unwrap(), outer);
        assert!(matches!(
            compose_decompositions(&outer, 0, &inner),
            Err(Error::LabelMismatch { .. })
        ));
    }

    #[test]
    fn left_association() {
        let d = IteratedDecomposition::new(GradedObject::plain("D0"), parts(&["D3", "D2", "D1"])).unwrap();
        assert_eq!(d.expr().to_string(), "[D1[-1] -> [D2[-1] -> D3]]");
        let l = left_associate(&d);
        assert_eq!(l.to_string(), "[[D1[-2] -> D2[-1]] -> D3]");
        assert_eq!(k0_class(&l), k0_class(&d.expr()));
        let one = IteratedDecomposition::new(GradedObject::plain("D0"), parts(&["D1"])).unwrap();
        assert_eq!(left_associate(&one), parse("D1"));
    }

    #[test]
    fn flips_match_triangulations() {
        let e = parse("[A -> [B -> [C -> D]]]");
        let t0 = dual_triangulation(&e).unwrap();
        assert_eq!(t0, Triangulation::fan(5, 4).unwrap());
        let f = bracket_flip(&e, 1, FlipDirection::ToLeft).unwrap();
        assert_eq!(f.to_string(), "[A -> [[B[-1] -> C] -> D]]");
        let t1 = dual_triangulation(&f).unwrap();
        assert_eq!(t0.diagonals().symmetric_difference(t1.diagonals()).count(), 2);
        assert_eq!(bracket_flip(&f, 1, FlipDirection::ToRight).unwrap(), e);
        assert!(bracket_flip(&e, 3, FlipDirection::ToLeft).is_err());
    }

    #[test]
    fn grammar_round_trip() {
        for s in [
            "A",
            "A[-3]",
            "[X -> Y]",
            "[D0[-1] --a0[-1]-> D1]",
            "[[c1.1 -f-> B[2]] -> C]",
        ] {
            assert_eq!(parse(s).to_string(), s);
        }
        assert!("[A -> ".parse::<ConeExpr>().is_err());
        assert!("A B".parse::<ConeExpr>().is_err());
    }

    #[test]
    fn triangle_rotation() {
        let t = ExactTriangle {
            objects: [
                GradedObject::plain("X"),
                GradedObject::plain("Y"),
                GradedObject::plain("Z"),
            ],
            morphisms: [Morphism::new("f"), Morphism::new("g"), Morphism::new("h")],
        };
        assert_eq!(t.statement().to_string(), "Z ≅ [X -f-> Y]");
        assert_eq!(t.rotate().statement().to_string(), "X[1] ≅ [Y -g-> Z]");
        assert_eq!(t.rotate().rotate().rotate(), t.shift(1));
    }
}
