//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::{smith_normal_form, IntMatrix};

/// `Z^rank + Z/t_1 + ... + Z/t_k` with `2 <= t_1 | t_2 | ... | t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbelianGroup {
    rank: usize,
    torsion: Vec<i64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Normalizes arbitrary cyclic orders into an invariant-factor chain.
    pub fn new(rank: usize, cyclic_orders: &[i64]) -> Result<Self, Error> {
        if cyclic_orders.iter().any(|&d| d < 1) {
            return Err(Error::Invariant(format!(
                "cyclic orders must be positive, got {cyclic_orders:?}"
            )));
        }
        let k = cyclic_orders.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, &d) in cyclic_orders.iter().enumerate() {
            m[(i, i)] = d;
        }
        let torsion = smith_normal_form(&m)
            .invariant_factors()
            .into_iter()
            .filter(|&d| d > 1)
            .collect();
        Ok(AbelianGroup { rank, torsion })
    }

    /// The cokernel `Z^cols / rowspace(relations)`.
    pub fn cokernel(relations: &IntMatrix) -> Self {
        let snf = smith_normal_form(relations);
        let factors = snf.invariant_factors();
        AbelianGroup {
            rank: relations.cols() - factors.len(),
            torsion: factors.into_iter().filter(|&d| d > 1).collect(),
        }
    }

    /// Homology at the middle of `C_{k+1} --incoming--> C_k --outgoing--> C_{k-1}`,
    /// both maps in row convention. The kernel of `outgoing` is saturated, so
    /// the invariant factors of `incoming` give the torsion directly.
    pub fn homology(incoming: &IntMatrix, outgoing: &IntMatrix) -> Self {
        assert_eq!(incoming.cols(), outgoing.rows(), "chain groups do not match");
        let n = outgoing.rows();
        let kernel_rank = n - smith_normal_form(outgoing).rank();
        let snf = smith_normal_form(incoming);
        let factors = snf.invariant_factors();
        AbelianGroup {
            rank: kernel_rank - factors.len(),
            torsion: factors.into_iter().filter(|&d| d > 1).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders: Vec<i64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        AbelianGroup::new(self.rank + other.rank, &orders).expect("torsion orders are positive")
    }

    pub fn sum<'a>(groups: impl IntoIterator<Item = &'a AbelianGroup>) -> AbelianGroup {
        groups
            .into_iter()
            .fold(AbelianGroup::trivial(), |acc, g| acc.direct_sum(g))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(format!("Z^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "0" {
            return Ok(AbelianGroup::trivial());
        }
        let bad = || Error::Parse(format!("not a group string: {s:?}"));
        let mut rank = 0usize;
        let mut orders = Vec::new();
        for term in s.split('+').map(str::trim) {
            if let Some(r) = term.strip_prefix("Z^") {
                rank += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = term.strip_prefix("Z/") {
                orders.push(d.parse::<i64>().map_err(|_| bad())?);
            } else if term == "Z" {
                rank += 1;
            } else {
                return Err(bad());
            }
        }
        AbelianGroup::new(rank, &orders)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z^1");
        assert_eq!(AbelianGroup::new(2, &[4, 2]).unwrap().to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(AbelianGroup::new(0, &[3]).unwrap().to_string(), "Z/3");
    }

    #[test]
    fn normalizes_coprime_orders() {
        assert_eq!(
            AbelianGroup::new(0, &[2, 3]).unwrap(),
            AbelianGroup::new(0, &[6]).unwrap()
        );
        assert_eq!(AbelianGroup::new(1, &[1, 1]).unwrap(), AbelianGroup::free(1));
    }

    #[test]
    fn parse_round_trip() {
        for g in [
            AbelianGroup::trivial(),
            AbelianGroup::free(3),
            AbelianGroup::new(1, &[2, 12]).unwrap(),
            AbelianGroup::new(0, &[5]).unwrap(),
        ] {
            assert_eq!(g.to_string().parse::<AbelianGroup>().unwrap(), g);
        }
        assert!("Z^x".parse::<AbelianGroup>().is_err());
        assert!("Q".parse::<AbelianGroup>().is_err());
    }

    #[test]
    fn cokernel_examples() {
        // Z^3 / (1, -1, -1) = Z^2
        let m = IntMatrix::from_rows(&[[1, -1, -1]]);
        assert_eq!(AbelianGroup::cokernel(&m), AbelianGroup::free(2));
        let m = IntMatrix::from_rows(&[[2]]);
        assert_eq!(AbelianGroup::cokernel(&m), AbelianGroup::new(0, &[2]).unwrap());
        assert_eq!(AbelianGroup::cokernel(&IntMatrix::zeros(0, 2)), AbelianGroup::free(2));
    }
}
