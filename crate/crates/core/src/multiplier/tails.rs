//! Hopf's formula through tails.
//!
//! Every relation of the pc presentation gets a free central tail. Each
//! overlap, collected both ways in the tailed presentation, must give the
//! same tail vector; the differences generate the relations among tails.
//! The quotient of `Z^m` (`m = n(n+1)/2`) by them is `R/[F,R]`, whose
//! torsion is `M(G)` and whose free rank is `n`.

use super::{Diagnostics, Method, MultiplierResult};
use crate::error::{Error, Result};
use crate::linalg::{abelian_quotient_invariants, IntMatrix};
use crate::pcgroup::PcPresentation;

/// One row per overlap: left tail vector minus right tail vector.
pub fn tail_relations(g: &PcPresentation) -> Result<Vec<Vec<i64>>> {
    let mut rows = Vec::new();
    for o in g.overlaps(true) {
        if o.lhs.0 != o.rhs.0 {
            return Err(Error::Inconsistent(format!("overlap {} does not resolve", o.name)));
        }
        let row: Vec<i64> = o.lhs.1.iter().zip(&o.rhs.1).map(|(a, b)| a - b).collect();
        if row.iter().any(|&x| x != 0) {
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn schur_tails(g: &PcPresentation) -> Result<MultiplierResult> {
    let m = g.relation_count();
    let rows = tail_relations(g)?;
    let mat = IntMatrix::from_rows(m, &rows)?;
    let (inv, free) = abelian_quotient_invariants(&mat, m, g.p()).map_err(|e| match e {
        Error::ForeignTorsion(d, p) => Error::internal(format!("tails relation matrix has torsion {d}, not a power of {p}")),
        other => other,
    })?;
    if free != g.n() {
        return Err(Error::internal(format!(
            "tails quotient has free rank {free}, expected {} (overlap evaluation is wrong)",
            g.n()
        )));
    }
    let mut r = MultiplierResult::from_invariants(Method::Tails, inv);
    r.diagnostics = Diagnostics {
        free_rank: Some(free),
        ..Diagnostics::default()
    };
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::AbelianInvariants;

    #[test]
    fn cyclic_p_squared() {
        let mut b = PcPresentation::builder(3, 2).unwrap();
        b.power_word(0, &[(1, 1)]).unwrap();
        let r = schur_tails(&b.build().unwrap()).unwrap();
        assert!(r.invariants.unwrap().is_trivial());
        assert_eq!(r.diagnostics.free_rank, Some(2));
    }

    #[test]
    fn elementary_abelian() {
        let r = schur_tails(&PcPresentation::elementary_abelian(5, 3).unwrap()).unwrap();
        assert_eq!(r.invariants.unwrap(), AbelianInvariants::elementary(5, 3));
    }

    #[test]
    fn extraspecial_exponent_p() {
        let mut b = PcPresentation::builder(3, 3).unwrap();
        b.comm_word(1, 0, &[(2, 1)]).unwrap();
        let r = schur_tails(&b.build().unwrap()).unwrap();
        assert_eq!(r.invariants.unwrap(), AbelianInvariants::elementary(3, 2));
    }

    #[test]
    fn quaternion_and_dihedral() {
        let mut q = PcPresentation::builder(2, 3).unwrap();
        q.power_word(0, &[(2, 1)]).unwrap();
        q.power_word(1, &[(2, 1)]).unwrap();
        q.comm_word(1, 0, &[(2, 1)]).unwrap();
        assert!(schur_tails(&q.build().unwrap()).unwrap().invariants.unwrap().is_trivial());

        let mut d = PcPresentation::builder(2, 3).unwrap();
        d.power_word(1, &[(2, 1)]).unwrap();
        d.comm_word(1, 0, &[(2, 1)]).unwrap();
        assert_eq!(schur_tails(&d.build().unwrap()).unwrap().order_exp, 1);
    }
}
