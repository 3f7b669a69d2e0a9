//! Closed formulas for abelian groups and direct products.

use crate::linalg::AbelianInvariants;

/// `M(⊕ Z/p^e_i) = ⊕_{i<j} Z/p^min(e_i, e_j)`.
pub fn multiplier_of_abelian(inv: &AbelianInvariants) -> AbelianInvariants {
    let e = inv.exponents();
    let mut out = Vec::new();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            out.push(e[i].min(e[j]));
        }
    }
    AbelianInvariants::new(inv.p(), out)
}

/// `A ⊗ B = ⊕_{i,j} Z/p^min(a_i, b_j)`.
pub fn tensor_of_abelian(a: &AbelianInvariants, b: &AbelianInvariants) -> AbelianInvariants {
    let mut out = Vec::new();
    for &x in a.exponents() {
        for &y in b.exponents() {
            out.push(x.min(y));
        }
    }
    AbelianInvariants::new(a.p(), out)
}

/// `M(A x B) = M(A) ⊕ M(B) ⊕ (A^ab ⊗ B^ab)`.
pub fn multiplier_of_direct_product(
    ma: &AbelianInvariants,
    mb: &AbelianInvariants,
    a_ab: &AbelianInvariants,
    b_ab: &AbelianInvariants,
) -> AbelianInvariants {
    ma.direct_sum(mb).direct_sum(&tensor_of_abelian(a_ab, b_ab))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(p: u32, e: &[u32]) -> AbelianInvariants {
        AbelianInvariants::new(p, e.to_vec())
    }

    #[test]
    fn cyclic_has_trivial_multiplier() {
        assert!(multiplier_of_abelian(&inv(3, &[1])).is_trivial());
        assert!(multiplier_of_abelian(&inv(3, &[4])).is_trivial());
    }

    #[test]
    fn elementary_multiplier_rank() {
        for k in 1..7 {
            let m = multiplier_of_abelian(&AbelianInvariants::elementary(5, k));
            assert_eq!(m, AbelianInvariants::elementary(5, k * (k - 1) / 2));
        }
    }

    #[test]
    fn mixed_orders() {
        assert_eq!(multiplier_of_abelian(&inv(3, &[2, 1])), inv(3, &[1]));
        assert_eq!(multiplier_of_abelian(&inv(2, &[3, 2, 1])), inv(2, &[2, 1, 1]));
    }

    #[test]
    fn tensor_examples() {
        assert!(tensor_of_abelian(&inv(3, &[2]), &AbelianInvariants::trivial(3)).is_trivial());
        assert_eq!(tensor_of_abelian(&inv(3, &[1, 1, 1]), &inv(3, &[1])), inv(3, &[1, 1, 1]));
        assert_eq!(tensor_of_abelian(&inv(3, &[2]), &inv(3, &[2])), inv(3, &[2]));
    }

    #[test]
    fn direct_product_with_trivial() {
        let ma = inv(3, &[1, 1]);
        let t = AbelianInvariants::trivial(3);
        assert_eq!(multiplier_of_direct_product(&ma, &t, &inv(3, &[1, 1]), &t), ma);
    }
}
