//! Elementary abelian sections `M/N` as GF(p) vector spaces.

use super::enumerate::{GroupTable, SubgroupDescriptor};
use crate::error::{Error, Result};

/// Coordinates on `M/N` for normal `N <= M` with `M/N` elementary abelian.
///
/// `lifts[i]` maps to the i-th basis vector; `coords` is defined on every
/// element of `M` and is a homomorphism onto GF(p)^dim.
#[derive(Clone, Debug)]
pub struct ElementarySection {
    p: u32,
    lifts: Vec<u32>,
    coord: Vec<u32>,
}

const OUTSIDE: u32 = u32::MAX;

impl ElementarySection {
    pub fn new(t: &GroupTable, m: &SubgroupDescriptor, n: &SubgroupDescriptor, what: &str) -> Result<Self> {
        Self::with_lifts(t, m, n, &[], what)
    }

    /// Like [`ElementarySection::new`] but tries `preferred` first when
    /// choosing lifts; independent preferred elements all become lifts.
    pub fn with_lifts(
        t: &GroupTable,
        m: &SubgroupDescriptor,
        n: &SubgroupDescriptor,
        preferred: &[u32],
        what: &str,
    ) -> Result<Self> {
        let p = t.p();
        if !m.order().is_multiple_of(n.order()) || n.elements().iter().any(|&x| !m.contains_index(x)) {
            return Err(Error::internal(format!("{what}: N is not contained in M")));
        }
        let mut in_n = vec![false; t.order()];
        for &x in n.elements() {
            in_n[x as usize] = true;
        }
        // Elementary abelian quotient: p-th powers and commutators of M fall into N.
        let mgens: Vec<u32> = m.generators().iter().map(|g| t.index_of(g)).collect();
        for &a in &mgens {
            if !in_n[t.pth_power(a) as usize] {
                return Err(Error::precondition(format!("{what} is not elementary abelian")));
            }
            for &b in &mgens {
                if !in_n[t.commutator(a, b) as usize] {
                    return Err(Error::precondition(format!("{what} is not abelian")));
                }
            }
        }

        // Greedy lifts: preferred elements, then pc generators, then the rest.
        let mut cand: Vec<u32> = preferred.iter().copied().filter(|&g| m.contains_index(g)).collect();
        cand.extend((0..t.n()).map(|i| t.generator_index(i)).filter(|&g| m.contains_index(g)));
        cand.extend(m.elements().iter().copied());
        let mut covered = in_n.clone();
        let mut span: Vec<u32> = n.elements().to_vec();
        let mut lifts = Vec::new();
        for x in cand {
            if span.len() == m.order() {
                break;
            }
            if covered[x as usize] {
                continue;
            }
            lifts.push(x);
            // span <- span * <x>
            let mut next = Vec::with_capacity(span.len() * p as usize);
            let mut y = 0u32;
            for _ in 0..p {
                for &s in &span {
                    next.push(t.mul(s, y));
                }
                y = t.mul(y, x);
            }
            for &z in &next {
                covered[z as usize] = true;
            }
            span = next;
        }
        let dim = lifts.len();
        if (p as usize).pow(dim as u32) * n.order() != m.order() {
            return Err(Error::internal(format!("{what}: lift count does not match the index")));
        }

        let mut coord = vec![OUTSIDE; t.order()];
        let q = (p as usize).pow(dim as u32);
        for c in 0..q {
            let mut y = 0u32;
            let mut rest = c;
            let mut code = 0u32;
            for (i, &l) in lifts.iter().enumerate() {
                let a = (rest % p as usize) as u32;
                rest /= p as usize;
                for _ in 0..a {
                    y = t.mul(y, l);
                }
                code += a * p.pow(i as u32);
            }
            for &z in n.elements() {
                let w = t.mul(y, z);
                if coord[w as usize] != OUTSIDE {
                    return Err(Error::internal(format!("{what}: coordinates are not unique")));
                }
                coord[w as usize] = code;
            }
        }
        Ok(ElementarySection { p, lifts, coord })
    }

    pub fn dim(&self) -> usize {
        self.lifts.len()
    }

    pub fn lifts(&self) -> &[u32] {
        &self.lifts
    }

    /// Coordinates of an element of `M`; `None` outside `M`.
    pub fn coords(&self, x: u32) -> Option<Vec<u32>> {
        let code = self.coord[x as usize];
        if code == OUTSIDE {
            return None;
        }
        let mut c = code;
        Some(
            (0..self.dim())
                .map(|_| {
                    let a = c % self.p;
                    c /= self.p;
                    a
                })
                .collect(),
        )
    }

    /// An element of `M` with the given coordinates.
    pub fn lift(&self, t: &GroupTable, v: &[u32]) -> u32 {
        let mut y = 0;
        for (&a, &l) in v.iter().zip(&self.lifts) {
            for _ in 0..a % self.p {
                y = t.mul(y, l);
            }
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::PcPresentation;

    #[test]
    fn extraspecial_sections() {
        let mut b = PcPresentation::builder(3, 3).unwrap();
        b.comm_word(1, 0, &[(2, 1)]).unwrap();
        let t = GroupTable::new(&b.build().unwrap()).unwrap();
        let d = t.derived_subgroup();
        let v = ElementarySection::new(&t, &t.whole(), &d, "V").unwrap();
        let w = ElementarySection::new(&t, &d, &t.trivial(), "W").unwrap();
        assert_eq!(v.dim(), 2);
        assert_eq!(w.dim(), 1);
        assert_eq!(v.lifts(), &[t.generator_index(0), t.generator_index(1)]);
        // commutator of the lifts is a nonzero vector of W
        let c = t.commutator(v.lifts()[0], v.lifts()[1]);
        assert_ne!(w.coords(c).unwrap(), vec![0]);
    }

    #[test]
    fn rejects_non_elementary() {
        let mut b = PcPresentation::builder(3, 2).unwrap();
        b.power_word(0, &[(1, 1)]).unwrap();
        let t = GroupTable::new(&b.build().unwrap()).unwrap();
        assert!(matches!(
            ElementarySection::new(&t, &t.whole(), &t.trivial(), "G"),
            Err(Error::Precondition(_))
        ));
    }
}
