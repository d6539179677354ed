//! Dense integer matrices and Smith normal form.
//!
//! Boundary matrices are stored with one row per higher-dimensional cell, so a
//! chain is a row vector and applying a boundary map is `chain * matrix`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors. Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// A `rows x cols` matrix with an explicit column count, so that empty row
    /// lists still carry their width.
    pub fn from_rows_with_cols(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = checked_add(out[(i, j)], checked_mul(a, other[(k, j)]));
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = checked_add(*o, checked_mul(a, self[(i, j)]));
            }
        }
        out
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).invariant_factors().len()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in matrix arithmetic")
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in matrix arithmetic")
}

/// Matrix with arbitrary-precision entries, used for Smith transforms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl BigMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &BigMatrix) -> BigMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut data = vec![BigInt::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    data[i * other.cols + j] += a * &other[(k, j)];
                }
            }
        }
        BigMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[i64]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += a * &self[(i, j)];
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.data[i * n..(i + 1) * n].to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Converts back when every entry fits in `i64`.
    pub fn to_int(&self) -> Option<IntMatrix> {
        let data = self.data.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>()?;
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl From<&IntMatrix> for BigMatrix {
    fn from(m: &IntMatrix) -> Self {
        BigMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for BigMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for BigMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[BigInt]> = (0..self.rows)
            .map(|i| &self.data[i * self.cols..(i + 1) * self.cols])
            .collect();
        write!(f, "{rows:?}")
    }
}

/// `diagonal = left * m * right` with `left`, `right` unimodular and the
/// diagonal entries nonnegative, each dividing the next, zeros last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub left: BigMatrix,
    pub diagonal: IntMatrix,
    pub right: BigMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal[(i, i)]).take_while(|&d| d != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Whether `v` is an integer combination of the rows of the original
    /// matrix.
    pub fn row_lattice_contains(&self, v: &[i64]) -> bool {
        let w = self.right.apply_row(v);
        let factors = self.invariant_factors();
        w.iter().enumerate().all(|(i, x)| match factors.get(i) {
            Some(&d) => (x % d).is_zero(),
            None => x.is_zero(),
        })
    }
}

/// Entry types the elimination runs over. Arithmetic reports overflow as
/// `None`.
trait Entry: Clone + PartialEq + Integer + Signed + ToPrimitive {
    fn mul_add(&self, k: &Self, b: &Self) -> Option<Self>;
}

impl Entry for i64 {
    fn mul_add(&self, k: &i64, b: &i64) -> Option<i64> {
        self.checked_add(k.checked_mul(*b)?)
    }
}

impl Entry for BigInt {
    fn mul_add(&self, k: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(self + k * b)
    }
}

struct Work<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Entry> Work<T> {
    fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Work { rows: n, cols: n, data }
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &T) -> Option<()> {
        for j in 0..self.cols {
            let v = self.at(dst, j).mul_add(k, self.at(src, j))?;
            self.data[dst * self.cols + j] = v;
        }
        Some(())
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &T) -> Option<()> {
        for i in 0..self.rows {
            let v = self.at(i, dst).mul_add(k, self.at(i, src))?;
            self.data[i * self.cols + dst] = v;
        }
        Some(())
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            self.data[i * self.cols + j] = v;
        }
    }

    /// Smallest nonzero entry of the trailing block, ties broken by the size
    /// of its row and column.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mag = |x: &T| x.abs().to_f64().unwrap_or(f64::INFINITY);
        let row_weight: Vec<f64> = (0..self.rows)
            .map(|i| (t..self.cols).map(|j| mag(self.at(i, j))).sum())
            .collect();
        let col_weight: Vec<f64> = (0..self.cols)
            .map(|j| (t..self.rows).map(|i| mag(self.at(i, j))).sum())
            .collect();
        let mut best: Option<(usize, usize, T, f64)> = None;
        for (i, rw) in row_weight.iter().enumerate().skip(t) {
            for (j, cw) in col_weight.iter().enumerate().skip(t) {
                let a = self.at(i, j).abs();
                if a.is_zero() {
                    continue;
                }
                let w = rw * cw;
                let better = match &best {
                    None => true,
                    Some((_, _, b, bw)) => a < *b || (a == *b && w < *bw),
                };
                if better {
                    best = Some((i, j, a, w));
                }
            }
        }
        best.map(|(i, j, _, _)| (i, j))
    }
}

/// Quotient of `a` by `p` rounded to the nearest integer.
fn nearest_quotient<T: Entry>(a: &T, p: &T) -> T {
    let pa = p.abs();
    let (q, r) = a.div_mod_floor(&pa);
    let q = if r > pa.clone() - r.clone() { q + T::one() } else { q };
    if p.is_negative() {
        -q
    } else {
        q
    }
}

type Triple<T> = (Work<T>, Work<T>, Work<T>);

fn eliminate<T: Entry>(mut d: Work<T>) -> Option<Triple<T>> {
    let (r, c) = (d.rows, d.cols);
    let mut left = Work::identity(r);
    let mut right = Work::identity(c);

    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = d.pivot(t) else {
                return Some((left, d, right));
            };
            d.swap_rows(t, pi);
            left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let p = d.at(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = nearest_quotient(d.at(i, t), &p);
                if !q.is_zero() {
                    let k = -q;
                    d.add_row(i, t, &k)?;
                    left.add_row(i, t, &k)?;
                }
                clean &= d.at(i, t).is_zero();
            }
            for j in t + 1..c {
                let q = nearest_quotient(d.at(t, j), &p);
                if !q.is_zero() {
                    let k = -q;
                    d.add_col(j, t, &k)?;
                    right.add_col(j, t, &k)?;
                }
                clean &= d.at(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d.at(i, j).is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    d.add_row(t, i, &T::one())?;
                    left.add_row(t, i, &T::one())?;
                }
                None => break,
            }
        }
        if d.at(t, t).is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
    }
    Some((left, d, right))
}

fn to_big<T: Entry + Into<BigInt>>(w: Work<T>) -> BigMatrix {
    BigMatrix {
        rows: w.rows,
        cols: w.cols,
        data: w.data.into_iter().map(Into::into).collect(),
    }
}

/// Smith normal form with transforms. Runs in machine integers and redoes
/// the elimination with arbitrary precision if an entry overflows.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let small = Work {
        rows: m.rows,
        cols: m.cols,
        data: m.data.clone(),
    };
    if let Some((left, d, right)) = eliminate(small) {
        return SmithForm {
            left: to_big(left),
            diagonal: IntMatrix {
                rows: d.rows,
                cols: d.cols,
                data: d.data,
            },
            right: to_big(right),
        };
    }
    let big = Work {
        rows: m.rows,
        cols: m.cols,
        data: m.data.iter().map(|&x| BigInt::from(x)).collect(),
    };
    let (left, d, right) = eliminate(big).expect("arbitrary precision cannot overflow");
    let diagonal = to_big(d).to_int().expect("invariant factor exceeds i64");
    SmithForm {
        left: to_big(left),
        diagonal,
        right: to_big(right),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.left.mul(&m.into()).mul(&s.right), BigMatrix::from(&s.diagonal));
        assert!(s.left.determinant().abs().is_one());
        assert!(s.right.determinant().abs().is_one());
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.diagonal, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(s.diagonal, IntMatrix::from_rows(&[[2, 0], [0, 4]]));
    }

    #[test]
    fn zero_one_by_one() {
        let s = check(&IntMatrix::from_rows(&[[0]]));
        assert_eq!(s.diagonal, IntMatrix::from_rows(&[[0]]));
        assert!(s.invariant_factors().is_empty());
    }

    #[test]
    fn empty_shapes() {
        let s = check(&IntMatrix::zeros(0, 3));
        assert_eq!(s.rank(), 0);
        let s = check(&IntMatrix::zeros(2, 0));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) is diagonal but not in normal form
        let s = check(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.invariant_factors(), vec![1, 6]);
    }

    #[test]
    fn row_lattice_membership() {
        let snf = smith_normal_form(&IntMatrix::from_rows(&[[2, 4, 0], [0, 3, 3]]));
        assert!(snf.row_lattice_contains(&[2, 7, 3]));
        assert!(!snf.row_lattice_contains(&[1, 2, 0]));
        assert!(!snf.row_lattice_contains(&[0, 0, 1]));
        assert!(snf.row_lattice_contains(&[0, 0, 0]));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = 3_000_000_000_000_000_000i64;
        let s = check(&IntMatrix::from_rows(&[[big, big - 1], [big - 1, big - 2]]));
        assert_eq!(s.invariant_factors(), vec![1, 1]);
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_rows(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]);
        assert_eq!(m.determinant(), 4);
        assert_eq!(IntMatrix::from_rows(&[[0, 1], [1, 0]]).determinant(), -1);
    }
}
