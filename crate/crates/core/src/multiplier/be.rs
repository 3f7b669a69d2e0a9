//! Blackburn–Evens for class-2 groups with elementary abelian `G/G'`.
//!
//! With `V = G/G'`, `W = G'` as GF(p)-spaces, `X1` is spanned by the Jacobi
//! tensors `v1 ⊗ (v2,v3) + v2 ⊗ (v3,v1) + v3 ⊗ (v1,v2)` and `X2` by the
//! `v ⊗ f(v)` with `f(v) = g^p`. Then
//! `log_p |M(G)| = dim V∧V - dim W + dim V⊗W - dim (X1 + X2)`.
//!
//! For odd `p` and class 2, `(xy)^p = x^p y^p [y,x]^C(p,2) = x^p y^p`, so `f`
//! is linear and `v ⊗ f(v)` is a quadratic form in `v`; its span is the span
//! of its values on basis vectors and pairwise sums of basis vectors.

use super::{Diagnostics, Method, MultiplierResult};
use crate::error::{Error, Result};
use crate::linalg::{SpanBuilder, Subspace};
use crate::pcgroup::{ElementarySection, GroupTable};

#[derive(Clone, Debug)]
pub struct BEData {
    pub p: u32,
    pub dim_v: usize,
    pub dim_w: usize,
    /// `bilinear[i][j]` = W-coordinates of `[l_i, l_j]`.
    pub bilinear: Vec<Vec<Vec<u32>>>,
    /// W-coordinates of `l_i^p`.
    pub f_images: Vec<Vec<u32>>,
    pub x1: Subspace,
    pub x2: Subspace,
    pub x: Subspace,
    v: ElementarySection,
    w: ElementarySection,
}

impl BEData {
    pub fn dim_wedge(&self) -> usize {
        self.dim_v * self.dim_v.saturating_sub(1) / 2
    }

    pub fn dim_tensor(&self) -> usize {
        self.dim_v * self.dim_w
    }

    /// `dim N = dim V⊗W - dim X`.
    pub fn dim_n(&self) -> usize {
        self.dim_tensor() - self.x.dim()
    }

    pub fn order_exp(&self) -> u32 {
        (self.dim_wedge() + self.dim_n() - self.dim_w) as u32
    }

    pub fn lifts(&self) -> &[u32] {
        self.v.lifts()
    }

    /// `f(v)` evaluated on an actual lift of `v`.
    pub fn f(&self, t: &GroupTable, v: &[u32]) -> Vec<u32> {
        let g = self.v.lift(t, v);
        self.w.coords(t.pth_power(g)).expect("p-th powers lie in G'")
    }

    /// `v ⊗ w` as a vector of `V⊗W` (index `i * dim_w + j`).
    pub fn tensor(&self, v: &[u32], w: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.dim_tensor()];
        for (i, &a) in v.iter().enumerate() {
            for (j, &b) in w.iter().enumerate() {
                out[i * self.dim_w + j] = (a * b) % self.p;
            }
        }
        out
    }
}

/// Checks the hypotheses and builds all the spaces.
pub fn be_data(t: &GroupTable) -> Result<BEData> {
    let p = t.p();
    if p == 2 {
        return Err(Error::precondition("Blackburn-Evens needs p odd"));
    }
    let class = t.nilpotency_class();
    if class != 2 {
        return Err(Error::precondition(format!("Blackburn-Evens needs class 2, group has class {class}")));
    }
    let d = t.derived_subgroup();
    let v = ElementarySection::new(t, &t.whole(), &d, "G/G'")?;
    let w = ElementarySection::new(t, &d, &t.trivial(), "G'")?;
    be_data_with_lifts(t, v, w)
}

fn be_data_with_lifts(t: &GroupTable, v: ElementarySection, w: ElementarySection) -> Result<BEData> {
    let p = t.p();
    let (dv, dw) = (v.dim(), w.dim());
    let lifts = v.lifts().to_vec();
    let wc = |x: u32| w.coords(x).ok_or_else(|| Error::internal("commutator outside G'"));
    let mut bilinear = vec![vec![vec![0u32; dw]; dv]; dv];
    for i in 0..dv {
        for j in 0..dv {
            bilinear[i][j] = wc(t.commutator(lifts[i], lifts[j]))?;
        }
    }
    let f_images: Vec<Vec<u32>> = lifts.iter().map(|&l| wc(t.pth_power(l))).collect::<Result<_>>()?;

    let mut data = BEData {
        p,
        dim_v: dv,
        dim_w: dw,
        bilinear,
        f_images,
        x1: Subspace::zero(p, dv * dw),
        x2: Subspace::zero(p, dv * dw),
        x: Subspace::zero(p, dv * dw),
        v,
        w,
    };

    let mut x1 = SpanBuilder::new(p, dv * dw);
    for i in 0..dv {
        for j in i + 1..dv {
            for k in j + 1..dv {
                let mut acc = vec![0u32; dv * dw];
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for (s, &y) in data.bilinear[b][c].iter().enumerate() {
                        let idx = a * dw + s;
                        acc[idx] = (acc[idx] + y) % p;
                    }
                }
                x1.push(&acc);
            }
        }
    }

    let mut x2 = SpanBuilder::new(p, dv * dw);
    for i in 0..dv {
        let mut e = vec![0u32; dv];
        e[i] = 1;
        let fv = data.f(t, &e);
        x2.push(&data.tensor(&e, &fv));
        for j in i + 1..dv {
            let mut e2 = e.clone();
            e2[j] = 1;
            let fv = data.f(t, &e2);
            x2.push(&data.tensor(&e2, &fv));
        }
    }
    data.x1 = x1.finish();
    data.x2 = x2.finish();
    data.x = data.x1.sum(&data.x2)?;
    Ok(data)
}

/// BE data computed from caller-chosen lifts of a basis of `G/G'`.
pub fn be_data_with_basis(t: &GroupTable, lifts: &[u32]) -> Result<BEData> {
    let base = be_data(t)?;
    // Rebuild the V section so that its preferred lifts are `lifts`.
    let d = t.derived_subgroup();
    let v = ElementarySection::with_lifts(t, &t.whole(), &d, lifts, "G/G'")?;
    be_data_with_lifts(t, v, base.w)
}

pub fn blackburn_evens(t: &GroupTable) -> Result<(MultiplierResult, BEData)> {
    let data = be_data(t)?;
    let r = MultiplierResult {
        method: Method::Be,
        order_exp: data.order_exp(),
        invariants: None,
        diagnostics: Diagnostics {
            dim_x: Some(data.x.dim()),
            dim_x1: Some(data.x1.dim()),
            dim_x2: Some(data.x2.dim()),
            ..Diagnostics::default()
        },
    };
    Ok((r, data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::PcPresentation;

    #[test]
    fn extraspecial_exponent_p() {
        // M(ES_p(p^3)) = Z_p^2: wedge 1 - w 1 + tensor 2 - dim X 0 = 2
        let mut b = PcPresentation::builder(5, 3).unwrap();
        b.comm_word(1, 0, &[(2, 1)]).unwrap();
        let t = GroupTable::new(&b.build().unwrap()).unwrap();
        let (r, d) = blackburn_evens(&t).unwrap();
        assert_eq!(r.order_exp, 2);
        assert_eq!(d.x.dim(), 0);
        for i in 0..d.dim_v {
            assert!(d.bilinear[i][i].iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn rejects_p_two_and_abelian() {
        let t = GroupTable::new(&PcPresentation::elementary_abelian(2, 3).unwrap()).unwrap();
        assert!(matches!(blackburn_evens(&t), Err(Error::Precondition(_))));
        let t = GroupTable::new(&PcPresentation::elementary_abelian(3, 3).unwrap()).unwrap();
        assert!(matches!(blackburn_evens(&t), Err(Error::Precondition(_))));
    }
}
