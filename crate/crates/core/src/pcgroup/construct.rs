//! New presentations from old: direct and central products, central
//! quotients, split extensions by `Z_p`, and automorphisms of small groups.

use std::collections::HashMap;

use super::enumerate::{GroupTable, SubgroupDescriptor};
use super::presentation::{GroupElement, PcBuilder, PcPresentation};
use crate::error::{Error, Result};
use crate::linalg::fp::inv_mod;
use crate::linalg::FpMatrix;

fn shift(w: &[(usize, u32)], by: usize) -> Vec<(usize, u32)> {
    w.iter().map(|&(g, e)| (g + by, e)).collect()
}

/// `A x B` with the generators of `A` first.
pub fn direct_product(a: &PcPresentation, b: &PcPresentation) -> Result<PcPresentation> {
    if a.p() != b.p() {
        return Err(Error::input("direct product of groups for different primes"));
    }
    let (na, nb) = (a.n(), b.n());
    let mut bld = PcBuilder::new(a.p(), na + nb)?.label(format!("{} x {}", a.label(), b.label()));
    copy_relations(&mut bld, a, 0)?;
    copy_relations(&mut bld, b, na)?;
    bld.build()
}

fn copy_relations(bld: &mut PcBuilder, g: &PcPresentation, by: usize) -> Result<()> {
    for i in 0..g.n() {
        bld.power_word(i + by, &shift(g.power_relation(i), by))?;
        for j in i + 1..g.n() {
            bld.comm_word(j + by, i + by, &shift(g.comm_relation(j, i), by))?;
        }
    }
    Ok(())
}

/// `G/K` for a central subgroup `K` given by generators.
///
/// Each step factors out an order-`p` central element `z` with leading
/// generator `g_i`; cosets are represented by elements with `a_i = 0`, so
/// the quotient keeps every generator except `g_i`.
pub fn quotient_by_central(g: &PcPresentation, k: &[GroupElement]) -> Result<PcPresentation> {
    let mut cur = g.clone();
    let mut gens: Vec<GroupElement> = k.to_vec();
    for z in &gens {
        if z.0.len() != g.n() {
            return Err(Error::input("subgroup generator has the wrong length"));
        }
    }
    while let Some(z) = gens.iter().find(|z| !z.is_identity()).cloned() {
        for i in 0..cur.n() {
            if !cur.commutator(&z, &cur.generator(i)).is_identity() {
                return Err(Error::precondition(format!("{z:?} is not central")));
            }
        }
        // An order-p element of <z>.
        let mut y = z.clone();
        loop {
            let next = cur.power(&y, cur.p() as u64);
            if next.is_identity() {
                break;
            }
            y = next;
        }
        let (q, map) = quotient_by_element(&cur, &y)?;
        gens = gens.iter().map(|x| map(&cur, x)).collect();
        cur = q;
    }
    Ok(cur.with_label(format!("{}/K", g.label())))
}

pub fn quotient_by_subgroup(g: &PcPresentation, k: &SubgroupDescriptor) -> Result<PcPresentation> {
    quotient_by_central(g, k.generators())
}

/// Quotient by a central element of order `p`. The returned map sends an
/// element of `g` to its image.
fn quotient_by_element(g: &PcPresentation, z: &GroupElement) -> Result<(PcPresentation, impl Fn(&PcPresentation, &GroupElement) -> GroupElement)> {
    let p = g.p();
    let i = z.leading().expect("nontrivial");
    let zn = g.power(z, inv_mod(z.0[i], p) as u64);
    let rep = move |g: &PcPresentation, x: &GroupElement| -> GroupElement {
        let c = (p - x.0[i]) % p;
        let r = g.multiply(x, &g.power(&zn, c as u64));
        debug_assert_eq!(r.0[i], 0);
        let mut v = r.0;
        v.remove(i);
        GroupElement(v)
    };
    let n = g.n();
    let new = |j: usize| if j < i { j } else { j - 1 };
    let mut b = PcBuilder::new(p, n - 1)?.label(g.label());
    for j in (0..n).filter(|&j| j != i) {
        let w = rep(g, &g.power(&g.generator(j), p as u64));
        b.power(new(j), &w.0)?;
        for k in (j + 1..n).filter(|&k| k != i) {
            let c = rep(g, &g.commutator(&g.generator(k), &g.generator(j)));
            b.comm(new(k), new(j), &c.0)?;
        }
    }
    let q = b.build()?;
    Ok((q, rep))
}

/// `(A x B)/<(za, zb^-1)>` for central elements of equal order `p`.
pub fn central_product(a: &PcPresentation, b: &PcPresentation, za: &GroupElement, zb: &GroupElement) -> Result<PcPresentation> {
    let ab = direct_product(a, b)?;
    let zbinv = b.inverse(zb);
    let mut v = za.0.clone();
    v.extend_from_slice(&zbinv.0);
    let z = GroupElement(v);
    if !ab.power(&z, ab.p() as u64).is_identity() || z.is_identity() {
        return Err(Error::precondition("identified elements must have order p"));
    }
    Ok(quotient_by_central(&ab, &[z])?.with_label(format!("{} o {}", a.label(), b.label())))
}

/// `A ⋊ <t>` with `t` of order `p` acting by `a_i^t = images[i]`.
///
/// The new generator `t` comes first. Each `a_i^-1 images[i]` must involve
/// only generators after `a_i`; the consistency check rejects maps that are
/// not automorphisms of order dividing `p`.
pub fn semidirect_by_cyclic(a: &PcPresentation, images: &[GroupElement]) -> Result<PcPresentation> {
    let n = a.n();
    if images.len() != n {
        return Err(Error::input(format!("need {n} generator images, got {}", images.len())));
    }
    let mut b = PcBuilder::new(a.p(), n + 1)?.label(format!("{}:Z{}", a.label(), a.p()));
    copy_relations(&mut b, a, 1)?;
    for (i, img) in images.iter().enumerate() {
        let c = a.multiply(&a.inverse(&a.generator(i)), img);
        if c.leading().is_some_and(|l| l <= i) {
            return Err(Error::precondition(format!(
                "action moves g{} outside g{} times later generators",
                i + 1,
                i + 1
            )));
        }
        b.comm_word(i + 1, 0, &shift(&c.letters(), 1))?;
    }
    b.build().map_err(|e| match e {
        Error::Inconsistent(m) => Error::precondition(format!("action is not an automorphism of order dividing p ({m})")),
        other => other,
    })
}

/// `Z_p^rank ⋊ Z_p`; row `i` of `action` is the image of `e_i`.
pub fn semidirect_elem_abelian(rank: usize, action: &FpMatrix, p: u32) -> Result<PcPresentation> {
    if action.rows() != rank || action.cols() != rank || action.p() != p {
        return Err(Error::input("action matrix has the wrong shape or modulus"));
    }
    let mut pw = FpMatrix::identity(p, rank);
    for _ in 0..p {
        pw = pw.mul(action)?;
    }
    if pw != FpMatrix::identity(p, rank) {
        return Err(Error::precondition("action matrix does not have order dividing p"));
    }
    let a = PcPresentation::elementary_abelian(p, rank)?;
    let images: Vec<GroupElement> = (0..rank).map(|i| GroupElement(action.row(i).to_vec())).collect();
    semidirect_by_cyclic(&a, &images)
}

/// An automorphism as the image of every element (by table index).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    map: Vec<u32>,
}

impl Automorphism {
    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }

    pub fn compose(&self, then: &Automorphism) -> Automorphism {
        Automorphism {
            map: self.map.iter().map(|&x| then.map[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Automorphism { map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    /// Images of the pc generators.
    pub fn generator_images(&self, t: &GroupTable) -> Vec<GroupElement> {
        (0..t.n()).map(|i| t.element(self.apply(t.generator_index(i)))).collect()
    }
}

/// Every automorphism of a small group, found by assigning generator
/// images from the last generator down and checking each relation as soon
/// as its generators are assigned.
pub fn automorphisms(t: &GroupTable) -> Result<Vec<Automorphism>> {
    let n = t.n();
    let size = t.order();
    if (size as f64).powi(n as i32) > 1e8 {
        return Err(Error::TooLarge { p: t.p(), n, cap: 0 });
    }
    let g = t.presentation();
    let mut out = Vec::new();
    let mut img = vec![0u32; n];
    assign(t, g, n, &mut img, &mut out);
    Ok(out)
}

fn eval_word(t: &GroupTable, img: &[u32], w: &[(usize, u32)]) -> u32 {
    let mut x = 0;
    for &(g, e) in w {
        for _ in 0..e {
            x = t.mul(x, img[g]);
        }
    }
    x
}

fn assign(t: &GroupTable, g: &PcPresentation, level: usize, img: &mut Vec<u32>, out: &mut Vec<Automorphism>) {
    if level == 0 {
        let gens: Vec<GroupElement> = img.iter().map(|&x| t.element(x)).collect();
        if t.closure(&gens).order() != t.order() {
            return;
        }
        let map = (0..t.order() as u32)
            .map(|x| {
                let e = t.element(x);
                eval_word(t, img, &e.letters())
            })
            .collect();
        out.push(Automorphism { map });
        return;
    }
    let i = level - 1;
    for cand in 0..t.order() as u32 {
        img[i] = cand;
        if t.pth_power(cand) != eval_word(t, img, g.power_relation(i)) {
            continue;
        }
        let ok = (i + 1..t.n()).all(|j| t.commutator(img[j], cand) == eval_word(t, img, g.comm_relation(j, i)));
        if ok {
            assign(t, g, level - 1, img, out);
        }
    }
}

/// One conjugacy class of involutions in `Aut(A)`.
#[derive(Clone, Debug)]
pub struct InvolutionClass {
    pub size: usize,
    /// A member whose action is compatible with the pc series, if any.
    pub representative: Option<Automorphism>,
}

/// Involution classes of `Aut(A)`, in a fixed order.
pub fn involution_classes(t: &GroupTable) -> Result<Vec<InvolutionClass>> {
    let auts = automorphisms(t)?;
    let mut index: HashMap<&Automorphism, usize> = HashMap::new();
    for (k, a) in auts.iter().enumerate() {
        index.insert(a, k);
    }
    let mut seen = vec![false; auts.len()];
    let mut out = Vec::new();
    for (k, s) in auts.iter().enumerate() {
        if seen[k] || s.is_identity() || !s.compose(s).is_identity() {
            continue;
        }
        let mut members = Vec::new();
        for tau in &auts {
            let c = tau.inverse().compose(s).compose(tau);
            let ci = index[&c];
            if !seen[ci] {
                seen[ci] = true;
                members.push(ci);
            }
        }
        members.sort_unstable();
        let representative = members.iter().map(|&m| &auts[m]).find(|a| compatible(t, a)).cloned();
        out.push(InvolutionClass {
            size: members.len(),
            representative,
        });
    }
    Ok(out)
}

/// `a_i^-1 φ(a_i)` lies in `<a_{i+1}, ...>` for every generator.
fn compatible(t: &GroupTable, a: &Automorphism) -> bool {
    (0..t.n()).all(|i| {
        let gi = t.generator_index(i);
        let c = t.mul(t.inverse(gi), a.apply(gi));
        t.element(c).leading().is_none_or(|l| l > i)
    })
}
