//! Finite abelian p-groups described by their invariants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::int::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// `Z/p^e1 + Z/p^e2 + ...`, exponents kept sorted in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    p: u32,
    exponents: Vec<u32>,
}

impl AbelianInvariants {
    pub fn new(p: u32, mut exponents: Vec<u32>) -> Self {
        exponents.retain(|&e| e > 0);
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        AbelianInvariants { p, exponents }
    }

    pub fn trivial(p: u32) -> Self {
        AbelianInvariants::new(p, Vec::new())
    }

    /// Elementary abelian group of the given rank.
    pub fn elementary(p: u32, rank: usize) -> Self {
        AbelianInvariants::new(p, vec![1; rank])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// log_p of the order.
    pub fn order_exp(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_elementary(&self) -> bool {
        self.exponents.iter().all(|&e| e == 1)
    }

    /// log_p of the exponent of the group (0 for the trivial group).
    pub fn exponent_exp(&self) -> u32 {
        self.exponents.first().copied().unwrap_or(0)
    }

    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        assert_eq!(self.p, other.p);
        let mut e = self.exponents.clone();
        e.extend_from_slice(&other.exponents);
        AbelianInvariants::new(self.p, e)
    }

    /// Invariants of `Hom(A, Z/p^e)` (equivalently `A ⊗ Z/p^e`).
    pub fn truncated(&self, e: u32) -> AbelianInvariants {
        AbelianInvariants::new(self.p, self.exponents.iter().map(|&a| a.min(e)).collect())
    }

    /// Removes `sub` as a sub-multiset of the exponents; `None` if it is not one.
    pub fn remove_multiset(&self, sub: &AbelianInvariants) -> Option<AbelianInvariants> {
        let mut rest = self.exponents.clone();
        for e in &sub.exponents {
            let pos = rest.iter().position(|x| x == e)?;
            rest.remove(pos);
        }
        Some(AbelianInvariants::new(self.p, rest))
    }

    /// Invariants recovered from the counts `log_p |{x : p^k x = 0}|` for k = 1, 2, ...
    ///
    /// `omega[k-1]` must hold `sum_i min(e_i, k)`; the sequence has to become
    /// constant once k reaches the exponent.
    pub fn from_omega_counts(p: u32, omega: &[u32]) -> Result<Self> {
        // #{i : e_i >= k} = omega[k] - omega[k-1]
        let mut at_least = Vec::with_capacity(omega.len());
        let mut prev = 0u32;
        for &w in omega {
            if w < prev {
                return Err(Error::internal("omega counts are not monotone"));
            }
            at_least.push(w - prev);
            prev = w;
        }
        let mut exps = Vec::new();
        for k in 0..at_least.len() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            if next > at_least[k] {
                return Err(Error::internal("omega counts are not concave"));
            }
            for _ in 0..(at_least[k] - next) {
                exps.push(k as u32 + 1);
            }
        }
        Ok(AbelianInvariants::new(p, exps))
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        // Group equal factors: Z9 x Z3^2
        while i < self.exponents.len() {
            let e = self.exponents[i];
            let mut j = i;
            while j < self.exponents.len() && self.exponents[j] == e {
                j += 1;
            }
            if !first {
                write!(f, " x ")?;
            }
            first = false;
            let q = (self.p as u64).pow(e);
            if j - i == 1 {
                write!(f, "Z{q}")?;
            } else {
                write!(f, "Z{q}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// p-part of the torsion of `Z^ngens / rowspace(relations)` plus the free rank.
///
/// Every elementary divisor greater than one must be a power of `p`; any
/// other prime signals an upstream bug and is reported as foreign torsion.
pub fn abelian_quotient_invariants(
    relations: &IntMatrix,
    ngens: usize,
    p: u32,
) -> Result<(AbelianInvariants, usize)> {
    if relations.cols() != ngens {
        return Err(Error::input(format!(
            "relation matrix has {} columns, expected {ngens}",
            relations.cols()
        )));
    }
    let divisors = smith_normal_form(relations);
    let rank = divisors.len();
    let mut exps = Vec::new();
    for d in divisors {
        if d.is_one() {
            continue;
        }
        exps.push(p_adic_exponent(&d, p).ok_or_else(|| Error::ForeignTorsion(d.to_string(), p))?);
    }
    Ok((AbelianInvariants::new(p, exps), ngens - rank))
}

/// `Some(k)` when `d = p^k`.
fn p_adic_exponent(d: &BigInt, p: u32) -> Option<u32> {
    let p = BigInt::from(p);
    let mut x = d.clone();
    let mut k = 0;
    while !x.is_one() {
        if x.is_zero() || !(&x % &p).is_zero() {
            return None;
        }
        x /= &p;
        k += 1;
    }
    Some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_orders() {
        let a = AbelianInvariants::new(3, vec![1, 0, 2, 1]);
        assert_eq!(a.exponents(), &[2, 1, 1]);
        assert_eq!(a.order_exp(), 4);
        assert_eq!(a.to_string(), "Z9 x Z3^2");
        assert_eq!(AbelianInvariants::trivial(5).to_string(), "1");
    }

    #[test]
    fn elementary_quotient() {
        let k = 3;
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { 5 } else { 0 }).collect())
            .collect();
        let m = IntMatrix::from_rows(k, &rows).unwrap();
        let (inv, free) = abelian_quotient_invariants(&m, k, 5).unwrap();
        assert_eq!(inv, AbelianInvariants::elementary(5, 3));
        assert_eq!(free, 0);
    }

    #[test]
    fn free_quotient() {
        let m = IntMatrix::zeros(0, 3);
        let (inv, free) = abelian_quotient_invariants(&m, 3, 2).unwrap();
        assert!(inv.is_trivial());
        assert_eq!(free, 3);
    }

    #[test]
    fn foreign_torsion_rejected() {
        let m = IntMatrix::from_rows(1, &[vec![6]]).unwrap();
        assert!(matches!(
            abelian_quotient_invariants(&m, 1, 2),
            Err(Error::ForeignTorsion(_, 2))
        ));
    }

    #[test]
    fn omega_counts_round_trip() {
        let a = AbelianInvariants::new(2, vec![3, 1, 1]);
        let omega: Vec<u32> = (1..=4).map(|k| a.truncated(k).order_exp()).collect();
        assert_eq!(AbelianInvariants::from_omega_counts(2, &omega).unwrap(), a);
    }

    #[test]
    fn remove_multiset() {
        let a = AbelianInvariants::new(3, vec![2, 1, 1]);
        assert_eq!(
            a.remove_multiset(&AbelianInvariants::new(3, vec![1])).unwrap(),
            AbelianInvariants::new(3, vec![2, 1])
        );
        assert!(a.remove_multiset(&AbelianInvariants::new(3, vec![3])).is_none());
    }
}
