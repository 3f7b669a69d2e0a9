//! Brute-force `H^2(G, Z/p^e)` over normalized 2-cocycles, and `M(G)` from it
//! through `H^2(G, Z/p^e) = Ext(G^ab, Z/p^e) ⊕ Hom(M(G), Z/p^e)`.
//!
//! A normalized cochain is a cocycle iff `δc(g, h, s) = 0` for every `s` in
//! a generating set `S`: from `δ(δc) = 0`,
//! `δc(g, h, ks) = δc(h, k, s) - δc(gh, k, s) + δc(g, hk, s) + δc(g, h, k)`,
//! so the condition propagates along words in `S`. Solving
//! `c(g, hs) = c(g, h) + c(gh, s) - c(h, s)` outward from `h = 1` expresses
//! every `c(g, h)` in the basic values `c(x, s)`; reaching an `h` twice gives
//! a linear condition on them. The cocycles are the solutions of those
//! conditions, and the coboundaries are the images of `δf(x, s)`.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::zpe::{cokernel_exponents, local_snf, EchelonModule, Zpe};
use crate::linalg::AbelianInvariants;
use crate::multiplier::{Diagnostics, Method, MultiplierResult};
use crate::pcgroup::GroupTable;

pub const DEFAULT_ORACLE_CAP: u64 = 128;

/// A finite group by its multiplication on labels `0..order`.
pub struct MulGroup<'a> {
    pub order: usize,
    pub identity: u32,
    pub mul: &'a (dyn Fn(u32, u32) -> u32 + Sync),
    /// Must generate the group; none may be the identity.
    pub gens: Vec<u32>,
    pub p: u32,
}

/// Pc generators that are independent modulo the Frattini subgroup.
pub fn frattini_basis(t: &GroupTable) -> Vec<u32> {
    let d = t.derived_subgroup();
    let mut span: Vec<_> = d.generators().to_vec();
    span.extend((0..t.order() as u32).map(|x| t.element(t.pth_power(x))).filter(|g| !g.is_identity()));
    let mut have = t.closure(&span);
    let mut gens = Vec::new();
    for i in 0..t.n() {
        let gi = t.generator_index(i);
        if !have.contains_index(gi) {
            gens.push(gi);
            span.push(t.element(gi));
            have = t.closure(&span);
        }
    }
    gens
}

/// `H^2` as the quotient of the solutions of `rows * x = 0` (over `ring`, in
/// `nvars` unknowns) by the span of the columns of `image` (`nvars` rows).
fn kernel_mod_image(ring: Zpe, p: u32, rows: Vec<Vec<u64>>, nvars: usize, mut image: Vec<Vec<u64>>) -> Result<Vec<u32>> {
    let e = ring.e();
    let vals = local_snf(ring, rows, nvars, Some(&mut image));
    // In the new coordinates the kernel is ⊕ p^(e-k_i) R, i.e. ⊕ Z/p^k_i.
    let ks: Vec<u32> = (0..nvars).map(|i| vals.get(i).copied().unwrap_or(e)).collect();
    let comps: Vec<usize> = (0..nvars).filter(|&i| ks[i] > 0).collect();
    let pk = |k: u32| (p as u64).pow(k);
    let ncols = image.first().map_or(0, |r| r.len());
    let mut rels = Vec::with_capacity(ncols + comps.len());
    for j in 0..ncols {
        let mut z = vec![0u64; comps.len()];
        for (c, &i) in comps.iter().enumerate() {
            let b = image[i][j];
            let sh = pk(e - ks[i]);
            if !b.is_multiple_of(sh) {
                return Err(Error::internal("coboundary is not a cocycle"));
            }
            z[c] = (b / sh) % pk(ks[i]);
        }
        for i in 0..nvars {
            if ks[i] == 0 && image[i][j] != 0 {
                return Err(Error::internal("coboundary is not a cocycle"));
            }
        }
        rels.push(z);
    }
    for (c, &i) in comps.iter().enumerate() {
        let mut r = vec![0u64; comps.len()];
        r[c] = pk(ks[i]) % ring.modulus();
        rels.push(r);
    }
    Ok(cokernel_exponents(ring, rels, comps.len()))
}

fn generates(g: &MulGroup<'_>) -> bool {
    let mut seen = vec![false; g.order];
    seen[g.identity as usize] = true;
    let mut stack = vec![g.identity];
    while let Some(h) = stack.pop() {
        for &s in &g.gens {
            let hs = (g.mul)(h, s);
            if !seen[hs as usize] {
                seen[hs as usize] = true;
                stack.push(hs);
            }
        }
    }
    seen.iter().all(|&x| x)
}

fn ring_for(p: u32, e: u32) -> Result<Zpe> {
    match (p as u64).checked_pow(e) {
        Some(q) if q < (1 << 31) => Ok(Zpe::new(p, e)),
        _ => Err(Error::input(format!("coefficient modulus {p}^{e} is too large"))),
    }
}

/// `H^2(G, Z/p^e)` with trivial action.
pub fn h2_of(g: &MulGroup<'_>, e: u32) -> Result<AbelianInvariants> {
    let ring = ring_for(g.p, e)?;
    let n = g.order;
    let ns = g.gens.len();
    if g.gens.contains(&g.identity) {
        return Err(Error::input("generators must be nontrivial"));
    }
    // dense labels for the non-identity elements
    let mut pos = vec![usize::MAX; n];
    let mut others = Vec::with_capacity(n.saturating_sub(1));
    for x in 0..n as u32 {
        if x != g.identity {
            pos[x as usize] = others.len();
            others.push(x);
        }
    }
    if !generates(g) {
        return Err(Error::input("the given elements do not generate the group"));
    }
    let nvars = others.len() * ns;
    let var = |x: u32, k: usize| (x != g.identity).then(|| pos[x as usize] * ns + k);
    let q = ring.modulus();

    let module = others
        .par_iter()
        .fold(
            || EchelonModule::new(ring, nvars),
            |mut m, &a| {
                let mut c: Vec<Option<Vec<u64>>> = vec![None; n];
                c[g.identity as usize] = Some(vec![0; nvars]);
                let mut queue = VecDeque::from([g.identity]);
                while let Some(h) = queue.pop_front() {
                    let ah = (g.mul)(a, h);
                    for (k, &s) in g.gens.iter().enumerate() {
                        let hs = (g.mul)(h, s);
                        let mut v = c[h as usize].clone().expect("visited");
                        if let Some(i) = var(ah, k) {
                            v[i] = (v[i] + 1) % q;
                        }
                        if let Some(i) = var(h, k) {
                            v[i] = (v[i] + q - 1) % q;
                        }
                        match &c[hs as usize] {
                            None => {
                                c[hs as usize] = Some(v);
                                queue.push_back(hs);
                            }
                            Some(old) => {
                                let row: Vec<u64> = old.iter().zip(&v).map(|(&x, &y)| (x + q - y) % q).collect();
                                m.push(row);
                            }
                        }
                    }
                }
                m
            },
        )
        .reduce(
            || EchelonModule::new(ring, nvars),
            |mut a, b| {
                for row in b.into_rows() {
                    a.push(row);
                }
                a
            },
        );

    // δf(x, s) = f(x) + f(s) - f(xs), one column per non-identity element
    let mut image = vec![vec![0u64; others.len()]; nvars];
    for &x in &others {
        for (k, &s) in g.gens.iter().enumerate() {
            let row = &mut image[var(x, k).expect("x is not the identity")];
            row[pos[x as usize]] = (row[pos[x as usize]] + 1) % q;
            row[pos[s as usize]] = (row[pos[s as usize]] + 1) % q;
            let xs = (g.mul)(x, s);
            if xs != g.identity {
                row[pos[xs as usize]] = (row[pos[xs as usize]] + q - 1) % q;
            }
        }
    }
    let exps = kernel_mod_image(ring, g.p, module.into_rows(), nvars, image)?;
    Ok(AbelianInvariants::new(g.p, exps))
}

fn check_cap(t: &GroupTable, cap: u64) -> Result<()> {
    let order = t.order() as u64;
    if order > cap {
        return Err(Error::OracleCap { order, cap });
    }
    Ok(())
}

pub fn cohomology_h2(t: &GroupTable, e: u32, cap: u64) -> Result<AbelianInvariants> {
    check_cap(t, cap)?;
    let mul = |x: u32, y: u32| t.mul(x, y);
    let g = MulGroup {
        order: t.order(),
        identity: 0,
        mul: &mul,
        gens: frattini_basis(t),
        p: t.p(),
    };
    h2_of(&g, e)
}

/// Strips the Ext part for `e = 1, 2, ...` until two consecutive answers agree.
pub fn schur_from_mul(g: &MulGroup<'_>, abelianization: &AbelianInvariants, max_e: u32) -> Result<MultiplierResult> {
    let mut prev: Option<AbelianInvariants> = None;
    for e in 1..=max_e {
        let h2 = h2_of(g, e)?;
        let ext = abelianization.truncated(e);
        let m = h2.remove_multiset(&ext).ok_or_else(|| {
            Error::internal(format!("Ext part {ext} is not a summand of H^2 = {h2} at e = {e}"))
        })?;
        if prev.as_ref() == Some(&m) {
            let mut r = MultiplierResult::from_invariants(Method::Oracle, m);
            r.diagnostics = Diagnostics {
                stabilization_e: Some(e - 1),
                ..Diagnostics::default()
            };
            return Ok(r);
        }
        prev = Some(m);
    }
    Err(Error::precondition(format!("multiplier did not stabilize by e = {max_e}")))
}

/// `M(G)` by the oracle. `max_e` defaults to `n + 1`, which always suffices
/// since `exp M(G)` divides `|G|`.
pub fn schur_from_h2(t: &GroupTable, cap: u64, max_e: Option<u32>) -> Result<MultiplierResult> {
    check_cap(t, cap)?;
    let mul = |x: u32, y: u32| t.mul(x, y);
    let g = MulGroup {
        order: t.order(),
        identity: 0,
        mul: &mul,
        gens: frattini_basis(t),
        p: t.p(),
    };
    let ab = t.abelianization()?;
    schur_from_mul(&g, &ab, max_e.unwrap_or(t.n() as u32 + 1))
}

/// The full normalized cochain complex `C^1 -> C^2 -> C^3`, with sparse
/// integer coboundary matrices. Quadratic and cubic in `|G|`; for tests.
#[derive(Clone, Debug)]
pub struct CocycleSystem {
    pub order: usize,
    pub p: u32,
    /// Row `(g, h)` of `d1`: entries `(x, coeff)` of `δf(g, h)`.
    pub d1: Vec<Vec<(usize, i64)>>,
    /// Row `(g, h, k)` of `d2` over the `(N-1)^2` variables.
    pub d2: Vec<Vec<(usize, i64)>>,
}

impl CocycleSystem {
    pub fn new(g: &MulGroup<'_>) -> Self {
        let n = g.order;
        let others: Vec<u32> = (0..n as u32).filter(|&x| x != g.identity).collect();
        let m = others.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in others.iter().enumerate() {
            pos[x as usize] = i;
        }
        let id = g.identity;
        let pair = |a: u32, b: u32| (a != id && b != id).then(|| pos[a as usize] * m + pos[b as usize]);
        let single = |a: u32| (a != id).then(|| pos[a as usize]);
        let add = |row: &mut Vec<(usize, i64)>, at: Option<usize>, c: i64| {
            if let Some(i) = at {
                row.push((i, c));
            }
        };
        let mut d1 = Vec::with_capacity(m * m);
        for &a in &others {
            for &b in &others {
                let mut row = Vec::new();
                add(&mut row, single(b), 1);
                add(&mut row, single((g.mul)(a, b)), -1);
                add(&mut row, single(a), 1);
                d1.push(normalize(row));
            }
        }
        let mut d2 = Vec::with_capacity(m * m * m);
        for &a in &others {
            for &b in &others {
                let ab = (g.mul)(a, b);
                for &c in &others {
                    let mut row = Vec::new();
                    add(&mut row, pair(b, c), 1);
                    add(&mut row, pair(ab, c), -1);
                    add(&mut row, pair(a, (g.mul)(b, c)), 1);
                    add(&mut row, pair(a, b), -1);
                    d2.push(normalize(row));
                }
            }
        }
        CocycleSystem { order: n, p: g.p, d1, d2 }
    }

    pub fn cochains1(&self) -> usize {
        self.order - 1
    }

    pub fn cochains2(&self) -> usize {
        self.d1.len()
    }

    /// `d2 * d1` as a sparse product; every entry should vanish.
    pub fn composite_is_zero(&self) -> bool {
        let m = self.cochains1();
        self.d2.iter().all(|row| {
            let mut acc = vec![0i64; m];
            for &(j, c) in row {
                for &(x, d) in &self.d1[j] {
                    acc[x] += c * d;
                }
            }
            acc.iter().all(|&v| v == 0)
        })
    }

    pub fn h2(&self, e: u32) -> Result<AbelianInvariants> {
        let ring = ring_for(self.p, e)?;
        let nvars = self.cochains2();
        let mut module = EchelonModule::new(ring, nvars);
        for row in &self.d2 {
            let mut dense = vec![0u64; nvars];
            for &(j, c) in row {
                dense[j] = ring.reduce(dense[j] as i64 + c);
            }
            module.push(dense);
        }
        let image: Vec<Vec<u64>> = self
            .d1
            .iter()
            .map(|row| {
                let mut dense = vec![0u64; self.cochains1()];
                for &(x, c) in row {
                    dense[x] = ring.reduce(dense[x] as i64 + c);
                }
                dense
            })
            .collect();
        Ok(AbelianInvariants::new(
            self.p,
            kernel_mod_image(ring, self.p, module.into_rows(), nvars, image)?,
        ))
    }
}

fn normalize(mut row: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    row.sort_unstable();
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(row.len());
    for (i, c) in row {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}
