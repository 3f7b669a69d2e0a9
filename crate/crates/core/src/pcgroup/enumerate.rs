//! Explicit element enumeration: subgroups by closure, center, lower
//! central series, abelianization.

use std::sync::OnceLock;

use rayon::prelude::*;

use super::presentation::{GroupElement, PcPresentation};
use crate::error::{Error, Result};
use crate::linalg::AbelianInvariants;

/// Largest `n` enumerated by default (`|G| <= p^8`).
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

/// A subgroup held as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupDescriptor {
    generators: Vec<GroupElement>,
    elements: Vec<u32>,
}

impl SubgroupDescriptor {
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Element indices, ascending; index 0 is the identity.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains_index(&self, idx: u32) -> bool {
        self.elements.binary_search(&idx).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// Multiplication table of a pc group by right multiplication with generators.
///
/// Elements are indexed in mixed radix with `a_1` most significant, so the
/// identity is index 0 and `g_i` has index `p^(n-1-i)`.
pub struct GroupTable {
    pres: PcPresentation,
    p: u32,
    n: usize,
    size: usize,
    radix: Vec<u32>,
    rmul: Vec<u32>,
    pth: OnceLock<Vec<u32>>,
}

impl GroupTable {
    pub fn new(pres: &PcPresentation) -> Result<Self> {
        Self::with_cap(pres, DEFAULT_ENUMERATION_CAP)
    }

    pub fn with_cap(pres: &PcPresentation, cap: usize) -> Result<Self> {
        let p = pres.p();
        let n = pres.n();
        if n > cap {
            return Err(Error::TooLarge { p, n, cap });
        }
        let size = (p as usize).pow(n as u32);
        let radix: Vec<u32> = (0..n).map(|i| p.pow((n - 1 - i) as u32)).collect();
        let mut t = GroupTable {
            pres: pres.clone(),
            p,
            n,
            size,
            radix,
            rmul: Vec::new(),
            pth: OnceLock::new(),
        };
        let rows: Vec<Vec<u32>> = (0..size as u32)
            .into_par_iter()
            .map(|x| {
                let base = t.element(x);
                (0..n)
                    .map(|i| {
                        let mut s = base.0.clone();
                        t.pres.collect_onto(&mut s, &[(i, 1)], None);
                        t.index_of_exps(&s)
                    })
                    .collect()
            })
            .collect();
        t.rmul = rows.into_iter().flatten().collect();
        Ok(t)
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.size
    }

    fn index_of_exps(&self, e: &[u32]) -> u32 {
        e.iter().zip(&self.radix).map(|(a, r)| a * r).sum()
    }

    pub fn index_of(&self, x: &GroupElement) -> u32 {
        self.index_of_exps(&x.0)
    }

    pub fn element(&self, mut idx: u32) -> GroupElement {
        let mut v = vec![0u32; self.n];
        for i in (0..self.n).rev() {
            v[i] = idx % self.p;
            idx /= self.p;
        }
        GroupElement(v)
    }

    pub fn generator_index(&self, i: usize) -> u32 {
        self.radix[i]
    }

    /// `x * g_i`
    #[inline]
    pub fn mul_gen(&self, x: u32, i: usize) -> u32 {
        self.rmul[x as usize * self.n + i]
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let mut acc = x;
        let mut rest = y;
        for i in 0..self.n {
            let a = rest / self.radix[i];
            rest %= self.radix[i];
            for _ in 0..a {
                acc = self.mul_gen(acc, i);
            }
        }
        acc
    }

    pub fn inverse(&self, x: u32) -> u32 {
        self.index_of(&self.pres.inverse(&self.element(x)))
    }

    pub fn commutator(&self, x: u32, y: u32) -> u32 {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(self.inverse(yx), xy)
    }

    /// `x^p` for every element.
    pub fn pth_powers(&self) -> &[u32] {
        self.pth.get_or_init(|| {
            (0..self.size as u32)
                .into_par_iter()
                .map(|x| self.index_of(&self.pres.power(&self.element(x), self.p as u64)))
                .collect()
        })
    }

    pub fn pth_power(&self, x: u32) -> u32 {
        self.pth_powers()[x as usize]
    }

    /// log_p of the order of `x`.
    pub fn element_order_exp(&self, mut x: u32) -> u32 {
        let mut k = 0;
        while x != 0 {
            x = self.pth_power(x);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> SubgroupDescriptor {
        SubgroupDescriptor {
            generators: (0..self.n).map(|i| self.pres.generator(i)).collect(),
            elements: (0..self.size as u32).collect(),
        }
    }

    pub fn trivial(&self) -> SubgroupDescriptor {
        SubgroupDescriptor {
            generators: Vec::new(),
            elements: vec![0],
        }
    }

    pub fn closure(&self, gens: &[GroupElement]) -> SubgroupDescriptor {
        let gi: Vec<u32> = gens.iter().map(|g| self.index_of(g)).filter(|&x| x != 0).collect();
        let elements = self.close_indices(&[0], &gi);
        SubgroupDescriptor {
            generators: gi.iter().map(|&x| self.element(x)).collect(),
            elements,
        }
    }

    fn close_indices(&self, seed: &[u32], gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.size];
        let mut list: Vec<u32> = Vec::new();
        for &s in seed {
            if !seen[s as usize] {
                seen[s as usize] = true;
                list.push(s);
            }
        }
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    list.push(y);
                }
            }
            k += 1;
        }
        list.sort_unstable();
        list
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: &[GroupElement]) -> SubgroupDescriptor {
        let mut g: Vec<u32> = gens.iter().map(|x| self.index_of(x)).filter(|&x| x != 0).collect();
        let mut elems = self.close_indices(&[0], &g);
        loop {
            let mut grew = false;
            let current = g.clone();
            for &h in &current {
                for i in 0..self.n {
                    let gen = self.generator_index(i);
                    let c = self.mul(self.inverse(gen), self.mul(h, gen));
                    if elems.binary_search(&c).is_err() {
                        g.push(c);
                        elems = self.close_indices(&elems, &g);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        SubgroupDescriptor {
            generators: g.iter().map(|&x| self.element(x)).collect(),
            elements: elems,
        }
    }

    /// `[A, B]` for normal subgroups `A`, `B`.
    pub fn commutator_subgroup(&self, a: &SubgroupDescriptor, b: &SubgroupDescriptor) -> SubgroupDescriptor {
        let mut gens = Vec::new();
        for x in &a.generators {
            let xi = self.index_of(x);
            for y in &b.generators {
                let c = self.commutator(xi, self.index_of(y));
                if c != 0 {
                    gens.push(self.element(c));
                }
            }
        }
        self.normal_closure(&gens)
    }

    pub fn derived_subgroup(&self) -> SubgroupDescriptor {
        let g = self.whole();
        self.commutator_subgroup(&g, &g)
    }

    /// `γ1 = G, γ2, ...` down to and including the trivial group.
    pub fn lower_central_series(&self) -> Vec<SubgroupDescriptor> {
        let g = self.whole();
        let mut series = vec![g.clone()];
        loop {
            let last = series.last().expect("nonempty");
            if last.is_trivial() {
                break;
            }
            let next = self.commutator_subgroup(last, &g);
            if next.order() == last.order() {
                // Only possible for a non-nilpotent group; p-groups never get here.
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn nilpotency_class(&self) -> usize {
        self.lower_central_series().len() - 1
    }

    pub fn is_central_index(&self, x: u32) -> bool {
        (0..self.n).all(|i| {
            let g = self.generator_index(i);
            self.mul_gen(x, i) == self.mul(g, x)
        })
    }

    pub fn center(&self) -> SubgroupDescriptor {
        let elements: Vec<u32> = (0..self.size as u32)
            .into_par_iter()
            .filter(|&x| self.is_central_index(x))
            .collect();
        let gens = self.small_generating_set(&elements);
        SubgroupDescriptor {
            generators: gens.iter().map(|&x| self.element(x)).collect(),
            elements,
        }
    }

    pub fn is_central(&self, s: &SubgroupDescriptor) -> bool {
        s.generators.iter().all(|g| self.is_central_index(self.index_of(g)))
    }

    /// Greedy generators of the subgroup whose elements are `elements`.
    pub fn small_generating_set(&self, elements: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut have = vec![0u32];
        // Prefer short exponent vectors: pc generators come first.
        let mut cand: Vec<u32> = elements.iter().copied().filter(|&x| x != 0).collect();
        cand.sort_by_key(|&x| (self.element(x).0.iter().filter(|&&a| a != 0).count(), std::cmp::Reverse(x)));
        for x in cand {
            if have.len() == elements.len() {
                break;
            }
            if have.binary_search(&x).is_err() {
                gens.push(x);
                have = self.close_indices(&[0], &gens);
            }
        }
        gens
    }

    pub fn product(&self, a: &SubgroupDescriptor, b: &SubgroupDescriptor) -> SubgroupDescriptor {
        let mut gens = a.generators.clone();
        gens.extend(b.generators.iter().cloned());
        self.closure(&gens)
    }

    pub fn intersection(&self, a: &SubgroupDescriptor, b: &SubgroupDescriptor) -> SubgroupDescriptor {
        let elements: Vec<u32> = a.elements.iter().copied().filter(|&x| b.contains_index(x)).collect();
        let gens = self.small_generating_set(&elements);
        SubgroupDescriptor {
            generators: gens.iter().map(|&x| self.element(x)).collect(),
            elements,
        }
    }

    /// log_p of the exponent of `G`.
    pub fn exponent_exp(&self) -> u32 {
        let pth = self.pth_powers();
        // depth[x] = order exponent; computed along the p-th power map
        let mut depth = vec![u32::MAX; self.size];
        depth[0] = 0;
        let mut best = 0;
        for x in 0..self.size {
            let mut path = Vec::new();
            let mut y = x;
            while depth[y] == u32::MAX {
                path.push(y);
                y = pth[y] as usize;
            }
            let mut d = depth[y];
            for &z in path.iter().rev() {
                d += 1;
                depth[z] = d;
            }
            best = best.max(depth[x]);
        }
        best
    }

    /// `G/G'` from counts of elements whose `p^k`-th power lies in `G'`.
    pub fn abelianization(&self) -> Result<AbelianInvariants> {
        let d = self.derived_subgroup();
        let mut member = vec![false; self.size];
        for &x in &d.elements {
            member[x as usize] = true;
        }
        let pth = self.pth_powers();
        let mut cur: Vec<u32> = (0..self.size as u32).collect();
        let mut omega = Vec::new();
        let total_exp = log_p(self.size / d.order(), self.p);
        loop {
            for x in cur.iter_mut() {
                *x = pth[*x as usize];
            }
            let count = cur.iter().filter(|&&x| member[x as usize]).count();
            let w = log_p(count / d.order(), self.p);
            omega.push(w);
            if w == total_exp {
                break;
            }
        }
        AbelianInvariants::from_omega_counts(self.p, &omega)
    }

    /// Abelian invariants of an abelian subgroup, from its own power counts.
    pub fn abelian_subgroup_invariants(&self, s: &SubgroupDescriptor) -> Result<AbelianInvariants> {
        let pth = self.pth_powers();
        let mut cur: Vec<u32> = s.elements.clone();
        let mut omega = Vec::new();
        let total = log_p(s.order(), self.p);
        loop {
            for x in cur.iter_mut() {
                *x = pth[*x as usize];
            }
            let count = cur.iter().filter(|&&x| x == 0).count();
            let w = log_p(count, self.p);
            omega.push(w);
            if w == total {
                break;
            }
        }
        AbelianInvariants::from_omega_counts(self.p, &omega)
    }

    /// Every subgroup of order `p` inside `s`, ordered by smallest generator index.
    pub fn subgroups_of_order_p(&self, s: &SubgroupDescriptor) -> Vec<SubgroupDescriptor> {
        let pth = self.pth_powers();
        let mut taken = vec![false; self.size];
        let mut out = Vec::new();
        for &x in &s.elements {
            if x == 0 || taken[x as usize] || pth[x as usize] != 0 {
                continue;
            }
            let sub = self.closure(&[self.element(x)]);
            for &y in &sub.elements {
                taken[y as usize] = true;
            }
            out.push(sub);
        }
        out
    }
}

pub(crate) fn log_p(mut x: usize, p: u32) -> u32 {
    let mut k = 0;
    while x > 1 {
        debug_assert_eq!(x % p as usize, 0);
        x /= p as usize;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(p: u32) -> PcPresentation {
        let mut b = PcPresentation::builder(p, 3).unwrap();
        b.comm_word(1, 0, &[(2, 1)]).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn abelian_group_structure() {
        let g = PcPresentation::elementary_abelian(3, 3).unwrap();
        let t = GroupTable::new(&g).unwrap();
        assert!(t.derived_subgroup().is_trivial());
        assert_eq!(t.nilpotency_class(), 1);
        assert_eq!(t.center().order(), 27);
        assert_eq!(t.abelianization().unwrap(), AbelianInvariants::elementary(3, 3));
    }

    #[test]
    fn extraspecial_structure() {
        let t = GroupTable::new(&es(5)).unwrap();
        assert_eq!(t.derived_subgroup().order(), 5);
        assert_eq!(t.center().order(), 5);
        assert_eq!(t.nilpotency_class(), 2);
        assert_eq!(t.exponent_exp(), 1);
        assert_eq!(t.subgroups_of_order_p(&t.center()).len(), 1);
    }

    #[test]
    fn cyclic_abelianization() {
        let mut b = PcPresentation::builder(2, 3).unwrap();
        b.power_word(0, &[(1, 1)]).unwrap();
        b.power_word(1, &[(2, 1)]).unwrap();
        let t = GroupTable::new(&b.build().unwrap()).unwrap();
        assert_eq!(t.abelianization().unwrap(), AbelianInvariants::new(2, vec![3]));
        assert_eq!(t.exponent_exp(), 3);
    }

    #[test]
    fn cap_enforced() {
        let g = PcPresentation::elementary_abelian(2, 5).unwrap();
        assert!(matches!(GroupTable::with_cap(&g, 4), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn table_multiplication_matches_collection() {
        let g = es(3);
        let t = GroupTable::new(&g).unwrap();
        for x in 0..27 {
            for y in 0..27 {
                let direct = g.multiply(&t.element(x), &t.element(y));
                assert_eq!(t.mul(x, y), t.index_of(&direct));
            }
        }
    }
}
