//! Power-commutator presentations with all relative orders equal to `p`,
//! and collection from the left.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{abelian_quotient_invariants, is_prime, AbelianInvariants, IntMatrix};

/// A word as `(generator, exponent)` letters, generators 0-based.
pub type Word = Vec<(usize, u32)>;

/// Exponent vector of a collected word `g1^a1 ... gn^an`, each `ai` in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u32>);

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        GroupElement(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn letters(&self) -> Word {
        letters_of(&self.0)
    }

    /// Index of the first nonzero exponent.
    pub fn leading(&self) -> Option<usize> {
        self.0.iter().position(|&a| a != 0)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word(&self.letters()))
    }
}

pub(crate) fn letters_of(exps: &[u32]) -> Word {
    exps.iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| (i, a))
        .collect()
}

/// `g3^2 g4` style rendering, 1-based; `1` for the empty word.
pub fn format_word(w: &[(usize, u32)]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|&(g, e)| if e == 1 { format!("g{}", g + 1) } else { format!("g{}^{}", g + 1, e) })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Which defining relation a tail belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    /// `g_i^p`
    Power(usize),
    /// `[g_j, g_i]` with `j > i`
    Commutator(usize, usize),
}

/// A consistent power-commutator presentation of a group of order `p^n`.
///
/// Relations are `g_i^p = w_ii` with `w_ii` in `<g_{i+1}, ...>` and
/// `[g_j, g_i] = w_ji` with `w_ji` in `<g_{j+1}, ...>`, using
/// `[a, b] = a^-1 b^-1 a b`. Relations not set are trivial.
#[derive(Clone, PartialEq, Eq)]
pub struct PcPresentation {
    p: u32,
    n: usize,
    label: String,
    powers: Vec<Word>,
    comms: Vec<Word>,
    comm_tail: Vec<usize>,
}

/// Accumulates relations before the consistency check.
#[derive(Clone, Debug)]
pub struct PcBuilder {
    p: u32,
    n: usize,
    label: String,
    powers: Vec<Word>,
    comms: Vec<Word>,
}

impl PcBuilder {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        Ok(PcBuilder {
            p,
            n,
            label: String::new(),
            powers: vec![Vec::new(); n],
            comms: vec![Vec::new(); n * n],
        })
    }

    pub fn label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sets `g_i^p` from an exponent vector.
    pub fn power(&mut self, i: usize, exps: &[u32]) -> Result<&mut Self> {
        let w = self.check_word(exps, i + 1, &format!("power relation of g{}", i + 1))?;
        self.powers[i] = w;
        Ok(self)
    }

    /// Sets `[g_j, g_i]` (`j > i`) from an exponent vector.
    pub fn comm(&mut self, j: usize, i: usize, exps: &[u32]) -> Result<&mut Self> {
        if j <= i || j >= self.n {
            return Err(Error::input(format!(
                "commutator relation needs j > i, got [g{}, g{}]",
                j + 1,
                i + 1
            )));
        }
        let w = self.check_word(exps, j + 1, &format!("commutator [g{}, g{}]", j + 1, i + 1))?;
        self.comms[j * self.n + i] = w;
        Ok(self)
    }

    /// Sets `g_i^p` from sparse `(generator, exponent)` letters.
    pub fn power_word(&mut self, i: usize, w: &[(usize, u32)]) -> Result<&mut Self> {
        let v = self.dense(w)?;
        self.power(i, &v)
    }

    pub fn comm_word(&mut self, j: usize, i: usize, w: &[(usize, u32)]) -> Result<&mut Self> {
        let v = self.dense(w)?;
        self.comm(j, i, &v)
    }

    fn dense(&self, w: &[(usize, u32)]) -> Result<Vec<u32>> {
        let mut v = vec![0u32; self.n];
        let mut last = None;
        for &(g, e) in w {
            if g >= self.n {
                return Err(Error::input(format!("unknown generator g{}", g + 1)));
            }
            if last.is_some_and(|l| g <= l) {
                return Err(Error::input("relation word is not in normal form (generators must increase)"));
            }
            last = Some(g);
            v[g] = e;
        }
        Ok(v)
    }

    fn check_word(&self, exps: &[u32], min_gen: usize, what: &str) -> Result<Word> {
        if exps.len() != self.n {
            return Err(Error::input(format!("{what}: word has length {}, expected {}", exps.len(), self.n)));
        }
        for (g, &e) in exps.iter().enumerate() {
            if e >= self.p {
                return Err(Error::input(format!("{what}: exponent {e} of g{} not reduced mod {}", g + 1, self.p)));
            }
            if e != 0 && g < min_gen {
                return Err(Error::input(format!(
                    "{what}: g{} may only involve generators after g{min_gen}",
                    g + 1
                )));
            }
        }
        Ok(letters_of(exps))
    }

    /// Builds without checking consistency. Use [`PcPresentation::check_consistency`]
    /// on the result before relying on normal forms.
    pub fn build_unchecked(self) -> PcPresentation {
        let n = self.n;
        let mut comm_tail = vec![usize::MAX; n * n];
        let mut next = n;
        for i in 0..n {
            for j in i + 1..n {
                comm_tail[j * n + i] = next;
                next += 1;
            }
        }
        PcPresentation {
            p: self.p,
            n,
            label: self.label,
            powers: self.powers,
            comms: self.comms,
            comm_tail,
        }
    }

    pub fn build(self) -> Result<PcPresentation> {
        let pres = self.build_unchecked();
        pres.check_consistency()?;
        Ok(pres)
    }
}

/// Result of evaluating one overlap two ways.
#[derive(Clone, Debug)]
pub struct OverlapEval {
    pub name: String,
    pub lhs: (Vec<u32>, Vec<i64>),
    pub rhs: (Vec<u32>, Vec<i64>),
}

impl PcPresentation {
    pub fn builder(p: u32, n: usize) -> Result<PcBuilder> {
        PcBuilder::new(p, n)
    }

    /// Elementary abelian group of rank `n`.
    pub fn elementary_abelian(p: u32, n: usize) -> Result<Self> {
        Ok(PcBuilder::new(p, n)?.label(format!("Z{p}^{n}")).build_unchecked())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Number of generators; `|G| = p^n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.n as u32)
    }

    pub fn power_relation(&self, i: usize) -> &[(usize, u32)] {
        &self.powers[i]
    }

    pub fn comm_relation(&self, j: usize, i: usize) -> &[(usize, u32)] {
        assert!(j > i);
        &self.comms[j * self.n + i]
    }

    pub fn is_abelian_presentation(&self) -> bool {
        self.comms.iter().all(|w| w.is_empty())
    }

    /// Number of defining relations, `n(n+1)/2`.
    pub fn relation_count(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// Tail slot of a relation: powers first, then commutators ordered by `(i, j)`.
    pub fn tail_index(&self, kind: RelationKind) -> usize {
        match kind {
            RelationKind::Power(i) => i,
            RelationKind::Commutator(j, i) => self.comm_tail[j * self.n + i],
        }
    }

    pub fn relation_kinds(&self) -> Vec<RelationKind> {
        let mut out: Vec<RelationKind> = (0..self.n).map(RelationKind::Power).collect();
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(RelationKind::Commutator(j, i));
            }
        }
        out
    }

    pub fn to_builder(&self) -> PcBuilder {
        PcBuilder {
            p: self.p,
            n: self.n,
            label: self.label.clone(),
            powers: self.powers.clone(),
            comms: self.comms.clone(),
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.n)
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        GroupElement::generator(self.n, i)
    }

    /// Collects `word` onto `state` in place, adding relation uses to `tails`.
    ///
    /// Each letter `g_i` is moved left past the collected tail
    /// `T = g_{i+1}^{a_{i+1}} ... g_n^{a_n}` via `T g_i = g_i T^{g_i}` and
    /// `g_j^{g_i} = g_j [g_j, g_i]`; overflow of `g_i` uses its power relation.
    pub fn collect_onto(&self, state: &mut [u32], word: &[(usize, u32)], mut tails: Option<&mut [i64]>) {
        debug_assert_eq!(state.len(), self.n);
        let p = self.p;
        let n = self.n;
        let mut stack: Vec<(usize, u32)> = word.iter().rev().copied().collect();
        let mut buf: Vec<(usize, u32)> = Vec::new();
        while let Some((i, e)) = stack.pop() {
            if e == 0 {
                continue;
            }
            if state[i + 1..].iter().all(|&a| a == 0) {
                let s = state[i] + e;
                state[i] = s % p;
                let k = s / p;
                if k > 0 {
                    if let Some(t) = tails.as_deref_mut() {
                        t[i] += k as i64;
                    }
                    let w = &self.powers[i];
                    for _ in 0..k {
                        stack.extend(w.iter().rev().copied());
                    }
                }
                continue;
            }
            buf.clear();
            for j in i + 1..n {
                let a = state[j];
                if a == 0 {
                    continue;
                }
                state[j] = 0;
                if let Some(t) = tails.as_deref_mut() {
                    t[self.comm_tail[j * n + i]] += a as i64;
                }
                let w = &self.comms[j * n + i];
                if w.is_empty() {
                    buf.push((j, a));
                } else {
                    for _ in 0..a {
                        buf.push((j, 1));
                        buf.extend_from_slice(w);
                    }
                }
            }
            if e > 1 {
                stack.push((i, e - 1));
            }
            stack.extend(buf.iter().rev().copied());
            stack.push((i, 1));
        }
    }

    /// Normal form of a word. Negative exponents are allowed.
    pub fn collect(&self, word: &[(usize, i64)]) -> Result<GroupElement> {
        let mut x = self.identity();
        for &(g, e) in word {
            if g >= self.n {
                return Err(Error::input(format!("unknown generator g{}", g + 1)));
            }
            let base = if e >= 0 {
                self.generator(g)
            } else {
                self.inverse(&self.generator(g))
            };
            let k = e.unsigned_abs();
            let pw = self.power(&base, k);
            x = self.multiply(&x, &pw);
        }
        Ok(x)
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut s = a.0.clone();
        self.collect_onto(&mut s, &b.letters(), None);
        GroupElement(s)
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        // Right-multiply until the running product is trivial.
        let mut r = a.0.clone();
        let mut y = vec![0u32; self.n];
        for i in 0..self.n {
            if r[i] != 0 {
                let e = self.p - r[i];
                self.collect_onto(&mut r, &[(i, e)], None);
                self.collect_onto(&mut y, &[(i, e)], None);
            }
        }
        debug_assert!(r.iter().all(|&x| x == 0));
        GroupElement(y)
    }

    pub fn power(&self, a: &GroupElement, mut k: u64) -> GroupElement {
        let mut acc = self.identity();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let ab = self.multiply(a, b);
        let ba = self.multiply(b, a);
        self.multiply(&self.inverse(&ba), &ab)
    }

    /// `b^-1 a b`
    pub fn conjugate(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let ab = self.multiply(a, b);
        self.multiply(&self.inverse(b), &ab)
    }

    fn eval(&self, start: &[u32], start_tails: Option<&[i64]>, word: &[(usize, u32)], with_tails: bool) -> (Vec<u32>, Vec<i64>) {
        let mut s = start.to_vec();
        let m = if with_tails { self.relation_count() } else { 0 };
        let mut t = match start_tails {
            Some(t) => t.to_vec(),
            None => vec![0; m],
        };
        self.collect_onto(&mut s, word, if with_tails { Some(&mut t) } else { None });
        (s, t)
    }

    fn unit(&self, i: usize, e: u32) -> Vec<u32> {
        let mut v = vec![0; self.n];
        v[i] = e;
        v
    }

    /// Evaluates every standard overlap both ways.
    ///
    /// The test words are `g_k (g_j g_i)` for `k > j > i`,
    /// `(g_j^(p-1) g_j) g_i` and `g_j (g_i^(p-1) g_i)` for `j > i`, and
    /// `g_i (g_i^(p-1) g_i)`. With `with_tails` each side also records how
    /// often each relation was applied.
    pub fn overlaps(&self, with_tails: bool) -> Vec<OverlapEval> {
        let n = self.n;
        let p = self.p;
        let zero = vec![0u32; n];
        let mut out = Vec::new();
        let then = |base: (Vec<u32>, Vec<i64>), word: &[(usize, u32)]| self.eval(&base.0, Some(&base.1), word, with_tails);
        // Continue from `start` by the letters of a normal form, then add its tails.
        let glue = |start: Vec<u32>, nf: &(Vec<u32>, Vec<i64>)| {
            let (s, mut t) = self.eval(&start, None, &letters_of(&nf.0), with_tails);
            for (a, b) in t.iter_mut().zip(&nf.1) {
                *a += b;
            }
            (s, t)
        };
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let lhs = self.eval(&zero, None, &[(k, 1), (j, 1), (i, 1)], with_tails);
                    let ji = self.eval(&zero, None, &[(j, 1), (i, 1)], with_tails);
                    let rhs = glue(self.unit(k, 1), &ji);
                    out.push(OverlapEval {
                        name: format!("g{} g{} g{}", k + 1, j + 1, i + 1),
                        lhs,
                        rhs,
                    });
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                let pj = self.eval(&zero, None, &[(j, p)], with_tails);
                let lhs = then(pj, &[(i, 1)]);
                let ji = self.eval(&zero, None, &[(j, 1), (i, 1)], with_tails);
                let rhs = glue(self.unit(j, p - 1), &ji);
                out.push(OverlapEval {
                    name: format!("g{}^{} g{}", j + 1, p, i + 1),
                    lhs,
                    rhs,
                });

                let pi = self.eval(&zero, None, &[(i, p)], with_tails);
                let lhs = glue(self.unit(j, 1), &pi);
                let jip = self.eval(&zero, None, &[(j, 1), (i, p - 1)], with_tails);
                let rhs = then(jip, &[(i, 1)]);
                out.push(OverlapEval {
                    name: format!("g{} g{}^{}", j + 1, i + 1, p),
                    lhs,
                    rhs,
                });
            }
        }
        for i in 0..n {
            let pi = self.eval(&zero, None, &[(i, p)], with_tails);
            let lhs = glue(self.unit(i, 1), &pi);
            let rhs = then(pi, &[(i, 1)]);
            out.push(OverlapEval {
                name: format!("g{}^{}", i + 1, p + 1),
                lhs,
                rhs,
            });
        }
        out
    }

    /// Checks every overlap; the error names the first one that fails.
    pub fn check_consistency(&self) -> Result<()> {
        for o in self.overlaps(false) {
            if o.lhs.0 != o.rhs.0 {
                return Err(Error::Inconsistent(format!(
                    "{}overlap {} collects to {} and {}",
                    if self.label.is_empty() { String::new() } else { format!("{}: ", self.label) },
                    o.name,
                    format_word(&letters_of(&o.lhs.0)),
                    format_word(&letters_of(&o.rhs.0)),
                )));
            }
        }
        Ok(())
    }

    pub fn is_consistent(&self) -> bool {
        self.check_consistency().is_ok()
    }

    /// `G/G'` read off the relations: `Z^n` modulo `p e_i - w_ii` and `w_ji`.
    pub fn abelian_invariants_from_relations(&self) -> Result<AbelianInvariants> {
        let n = self.n;
        let mut rows = Vec::new();
        for i in 0..n {
            let mut r = vec![0i64; n];
            r[i] = self.p as i64;
            for &(g, e) in &self.powers[i] {
                r[g] -= e as i64;
            }
            rows.push(r);
        }
        for w in &self.comms {
            if w.is_empty() {
                continue;
            }
            let mut r = vec![0i64; n];
            for &(g, e) in w {
                r[g] += e as i64;
            }
            rows.push(r);
        }
        let m = IntMatrix::from_rows(n, &rows)?;
        let (inv, free) = abelian_quotient_invariants(&m, n, self.p)?;
        if free != 0 {
            return Err(Error::internal("abelianization of a finite group has free rank"));
        }
        Ok(inv)
    }
}

impl fmt::Debug for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::dsl::to_dsl(self))
    }
}
