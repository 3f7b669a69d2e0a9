//! Upper bounds on `|M(G)|`, audited against a computed multiplier.
//!
//! All quantities are `log_p` exponents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{AbelianInvariants, SpanBuilder};
use crate::multiplier::{multiplier_of_abelian, schur_tails, tensor_of_abelian};
use crate::pcgroup::{quotient_by_subgroup, ElementarySection, GroupTable, SubgroupDescriptor};

/// `|M(G)| <= p^(n(n-1)/2)`.
pub fn green_bound(n: usize) -> i64 {
    let n = n as i64;
    n * (n - 1) / 2
}

/// `|M(G)| <= p^((n-1)(n-2)/2 + 1)` for non-abelian `G`.
pub fn niroomand_bound(n: usize) -> i64 {
    let n = n as i64;
    (n - 1) * (n - 2) / 2 + 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub bound_exp: Option<i64>,
    pub computed_exp: u32,
    pub status: BoundStatus,
    /// Generators of the central subgroup giving the tightest divisibility bound.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subgroups_checked: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub psi2_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub psi3_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl BoundEntry {
    fn compare(name: &str, bound: i64, computed: u32) -> Self {
        BoundEntry {
            name: name.to_string(),
            bound_exp: Some(bound),
            computed_exp: computed,
            status: if computed as i64 <= bound { BoundStatus::Pass } else { BoundStatus::Fail },
            k: None,
            subgroups_checked: None,
            psi2_dim: None,
            psi3_dim: None,
            note: None,
        }
    }

    fn skipped(name: &str, computed: u32, why: String) -> Self {
        BoundEntry {
            status: BoundStatus::Skipped,
            bound_exp: None,
            note: Some(why),
            ..Self::compare(name, 0, computed)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub group: String,
    pub entries: Vec<BoundEntry>,
    pub pass: bool,
}

/// Largest value `log_p |M(G)|` may take for a central `K`:
/// `|M(G)| |G' ∩ K|` divides `|M(G/K)| |M(K)| |(G/K)^ab ⊗ K|`.
pub fn divisibility_bound(t: &GroupTable, k: &SubgroupDescriptor) -> Result<i64> {
    if !t.is_central(k) {
        return Err(Error::precondition("K is not central"));
    }
    let a = quotient_by_subgroup(t.presentation(), k)?;
    let ma = schur_tails(&a)?.order_exp as i64;
    let a_ab = a.abelian_invariants_from_relations()?;
    let k_inv = t.abelian_subgroup_invariants(k)?;
    let mk = multiplier_of_abelian(&k_inv).order_exp() as i64;
    let tensor = tensor_of_abelian(&a_ab, &k_inv).order_exp() as i64;
    let meet = t.intersection(&t.derived_subgroup(), k);
    Ok(ma + mk + tensor - log_p(meet.order(), t.p()))
}

fn log_p(mut x: usize, p: u32) -> i64 {
    let mut k = 0;
    while x > 1 {
        x /= p as usize;
        k += 1;
    }
    k
}

/// Divisibility check for one central `K`.
pub fn theorem_j_check(t: &GroupTable, k: &SubgroupDescriptor, m_exp: u32) -> Result<bool> {
    Ok(m_exp as i64 <= divisibility_bound(t, k)?)
}

/// Runs the divisibility check over every central subgroup of order `p`.
pub fn divisibility_audit(t: &GroupTable, m_exp: u32) -> Result<BoundEntry> {
    let ks = t.subgroups_of_order_p(&t.center());
    let mut best: Option<(i64, &SubgroupDescriptor)> = None;
    for k in &ks {
        let b = divisibility_bound(t, k)?;
        if best.is_none_or(|(bb, _)| b < bb) {
            best = Some((b, k));
        }
    }
    let (b, k) = best.ok_or_else(|| Error::precondition("trivial center"))?;
    let mut e = BoundEntry::compare("divisibility", b, m_exp);
    e.k = Some(k.generators().iter().map(|g| format!("{g:?}")).collect());
    e.subgroups_checked = Some(ks.len());
    Ok(e)
}

/// Sections used by the class-3 bound, with `Ḡ = G/Z(G)`.
pub struct Class3Sections {
    /// `Ḡ^ab = G / Z(G)G'`
    pub u: ElementarySection,
    /// `γ2/γ3`
    pub w2: ElementarySection,
    /// `γ3`
    pub w3: ElementarySection,
}

pub fn class3_sections(t: &GroupTable) -> Result<Class3Sections> {
    class3_sections_with(t, &[])
}

/// As [`class3_sections`], preferring the given lifts for `Ḡ^ab`.
pub fn class3_sections_with(t: &GroupTable, preferred: &[u32]) -> Result<Class3Sections> {
    let lcs = t.lower_central_series();
    let class = lcs.len() - 1;
    if class != 3 {
        return Err(Error::precondition(format!("class(G) = {class}, not 3")));
    }
    let zg = t.product(&t.center(), &lcs[1]);
    Ok(Class3Sections {
        u: ElementarySection::with_lifts(t, &lcs[0], &zg, preferred, "G/Z(G)G'")?,
        w2: ElementarySection::new(t, &lcs[1], &lcs[2], "γ2/γ3")?,
        w3: ElementarySection::new(t, &lcs[2], &lcs[3], "γ3")?,
    })
}

fn tensor_into(acc: &mut [u32], w: &[u32], u: &[u32], p: u32) {
    let du = u.len();
    for (a, &x) in w.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (b, &y) in u.iter().enumerate() {
            let i = a * du + b;
            acc[i] = (acc[i] + x * y) % p;
        }
    }
}

/// `(dim Im ψ2, dim Im ψ3)`, spanning both maps over all basis tuples.
pub fn psi_dims(t: &GroupTable, s: &Class3Sections) -> (usize, usize) {
    let p = t.p();
    let l = s.u.lifts();
    let d = l.len();
    let e = |i: usize| {
        let mut v = vec![0u32; d];
        v[i] = 1;
        v
    };
    let c = |x: u32, y: u32| t.commutator(x, y);
    let w2 = |x: u32| s.w2.coords(x).expect("commutator lies in γ2");
    let w3 = |x: u32| s.w3.coords(x).expect("double commutator lies in γ3");

    let mut psi2 = SpanBuilder::new(p, s.w2.dim() * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut acc = vec![0u32; s.w2.dim() * d];
                tensor_into(&mut acc, &w2(c(l[i], l[j])), &e(k), p);
                tensor_into(&mut acc, &w2(c(l[j], l[k])), &e(i), p);
                tensor_into(&mut acc, &w2(c(l[k], l[i])), &e(j), p);
                psi2.push(&acc);
            }
        }
    }
    let mut psi3 = SpanBuilder::new(p, s.w3.dim() * d);
    for i in 0..d {
        for j in 0..d {
            let x12 = c(l[i], l[j]);
            for k in 0..d {
                for m in 0..d {
                    let x34 = c(l[k], l[m]);
                    let mut acc = vec![0u32; s.w3.dim() * d];
                    tensor_into(&mut acc, &w3(c(x12, l[k])), &e(m), p);
                    tensor_into(&mut acc, &w3(c(l[m], x12)), &e(k), p);
                    tensor_into(&mut acc, &w3(c(x34, l[i])), &e(j), p);
                    tensor_into(&mut acc, &w3(c(l[j], x34)), &e(i), p);
                    psi3.push(&acc);
                }
            }
        }
    }
    (psi2.dim(), psi3.dim())
}

/// Upper bound on `log_p |M(G)|` for class 3:
/// `|M(G)| |γ2| |Im ψ2| |Im ψ3| <= |M(G^ab)| |γ2/γ3 ⊗ Ḡ^ab| |γ3 ⊗ Ḡ^ab|`.
pub fn theorem_rm_bound(t: &GroupTable, psi2: usize, psi3: usize, g_ab: &AbelianInvariants) -> Result<i64> {
    let s = class3_sections(t)?;
    let lcs = t.lower_central_series();
    let du = s.u.dim() as i64;
    let rhs = multiplier_of_abelian(g_ab).order_exp() as i64 + s.w2.dim() as i64 * du + s.w3.dim() as i64 * du;
    Ok(rhs - log_p(lcs[1].order(), t.p()) - psi2 as i64 - psi3 as i64)
}

/// The class-3 bound entry. The ψ dimensions are also computed from a
/// second set of coset representatives; agreement is noted, not required.
pub fn class3_audit(t: &GroupTable, m_exp: u32) -> Result<BoundEntry> {
    let s = match class3_sections(t) {
        Ok(s) => s,
        Err(Error::Precondition(why)) => return Ok(BoundEntry::skipped("class-3", m_exp, why)),
        Err(e) => return Err(e),
    };
    let (d2, d3) = psi_dims(t, &s);
    let g_ab = t.abelianization()?;
    let b = theorem_rm_bound(t, d2, d3, &g_ab)?;
    let mut e = BoundEntry::compare("class-3", b, m_exp);
    e.psi2_dim = Some(d2);
    e.psi3_dim = Some(d3);

    let zg = t.product(&t.center(), &t.derived_subgroup());
    let shift = *zg.elements().last().expect("nonempty");
    let moved: Vec<u32> = s.u.lifts().iter().map(|&x| t.mul(x, shift)).collect();
    let alt = class3_sections_with(t, &moved)?;
    let same = psi_dims(t, &alt) == (d2, d3);
    e.note = Some(if same {
        "ψ dimensions agree for shifted coset representatives".to_string()
    } else {
        "ψ dimensions differ for shifted coset representatives".to_string()
    });
    Ok(e)
}

/// Every bound that applies to `G`, against `log_p |M(G)| = m_exp`.
pub fn audit(group: &str, t: &GroupTable, m_exp: u32) -> Result<BoundReport> {
    let n = t.n();
    let mut entries = vec![BoundEntry::compare("green", green_bound(n), m_exp)];
    let abelian = t.derived_subgroup().is_trivial();
    entries.push(if abelian {
        BoundEntry::skipped("niroomand", m_exp, "G is abelian".to_string())
    } else {
        BoundEntry::compare("niroomand", niroomand_bound(n), m_exp)
    });
    entries.push(if n == 0 {
        BoundEntry::skipped("divisibility", m_exp, "G is trivial".to_string())
    } else {
        divisibility_audit(t, m_exp)?
    });
    entries.push(class3_audit(t, m_exp)?);
    let pass = entries.iter().all(|e| e.status != BoundStatus::Fail);
    Ok(BoundReport {
        group: group.to_string(),
        entries,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, Params};

    #[test]
    fn closed_forms() {
        assert_eq!((green_bound(4), niroomand_bound(4)), (6, 4));
        assert_eq!((green_bound(6), niroomand_bound(6)), (15, 11));
        assert_eq!((green_bound(7), niroomand_bound(7)), (21, 16));
    }

    #[test]
    fn trivial_k_is_an_identity() {
        let t = GroupTable::new(&build("Phi2(22)", &Params::new(3)).unwrap()).unwrap();
        let m = schur_tails(t.presentation()).unwrap().order_exp;
        assert_eq!(divisibility_bound(&t, &t.trivial()).unwrap(), m as i64);
    }

    #[test]
    fn non_central_k_is_rejected() {
        let t = GroupTable::new(&build("Phi2(22)", &Params::new(3)).unwrap()).unwrap();
        let k = t.closure(&[t.element(t.generator_index(1))]);
        assert!(matches!(divisibility_bound(&t, &k), Err(Error::Precondition(_))));
    }

    #[test]
    fn class_two_has_no_class3_entry() {
        let t = GroupTable::new(&build("Phi2(22)", &Params::new(3)).unwrap()).unwrap();
        assert!(matches!(class3_sections(&t), Err(Error::Precondition(_))));
        assert_eq!(class3_audit(&t, 1).unwrap().status, BoundStatus::Skipped);
    }
}
