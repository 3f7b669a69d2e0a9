//! Dense matrices and subspaces over GF(p).

use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let m = p as u64;
    let mut base = a as u64 % m;
    let mut acc = 1u64 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

/// Row-major matrix with entries in `[0, p)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry mod `p`.
    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::input(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        Ok(m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::input("matrix shape or modulus mismatch"));
        }
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j) as u64;
                    out.data[i * other.cols + j] = ((cur + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and rank.
    ///
    /// Pivots are chosen as the first nonzero entry of the leftmost
    /// remaining column, scanning rows top-down, so the result is fully
    /// deterministic.
    pub fn row_reduce(&self) -> (FpMatrix, usize) {
        let mut m = self.clone();
        let rank = m.reduce_in_place();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1
    }

    fn reduce_in_place(&mut self) -> usize {
        self.reduce_with_pivots().len()
    }

    fn reduce_with_pivots(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(src) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if src != r {
                for j in 0..cols {
                    self.data.swap(src * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), self.p) as u64;
            for j in c..cols {
                let v = self.data[r * cols + j] as u64;
                self.data[r * cols + j] = (v * inv % p) as u32;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let a = self.data[i * cols + j] as u64;
                    let b = self.data[r * cols + j] as u64;
                    self.data[i * cols + j] = ((a + (p - f) * b) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix(p={}, {}x{})", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// A subspace of GF(p)^ambient held as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: FpMatrix::zeros(p, 0, ambient),
            pivots: Vec::new(),
        }
    }

    /// Echelonized span of `vectors`.
    pub fn span(p: u32, ambient: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        let m = FpMatrix::from_rows(p, ambient, vectors)?;
        Ok(Self::from_matrix(m))
    }

    fn from_matrix(mut m: FpMatrix) -> Self {
        let pivots = m.reduce_with_pivots();
        let rank = pivots.len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        Subspace {
            ambient: m.cols,
            basis: m,
            pivots,
        }
    }

    pub fn p(&self) -> u32 {
        self.basis.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let p = self.p() as u64;
        let mut w: Vec<u64> = v.iter().map(|&x| (x % self.p()) as u64).collect();
        for (r, &c) in self.pivots.iter().enumerate() {
            let f = w[c];
            if f == 0 {
                continue;
            }
            for (j, wj) in w.iter_mut().enumerate().skip(c) {
                *wj = (*wj + (p - f) * self.basis.get(r, j) as u64) % p;
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient || self.p() != other.p() {
            return Err(Error::input("subspaces live in different spaces"));
        }
        let mut rows: Vec<Vec<u32>> = (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect();
        rows.extend((0..other.dim()).map(|i| other.basis.row(i).to_vec()));
        Subspace::span(self.p(), self.ambient, &rows)
    }
}

/// Builds a subspace one vector at a time without re-reducing everything.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    p: u32,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(p: u32, ambient: usize) -> Self {
        SpanBuilder {
            p,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn push(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let p = self.p as u64;
        let mut w: Vec<u32> = v.iter().map(|&x| x % self.p).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = w[c] as u64;
            if f == 0 {
                continue;
            }
            for j in c..self.ambient {
                w[j] = ((w[j] as u64 + (p - f) * row[j] as u64) % p) as u32;
            }
        }
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[c], self.p) as u64;
        for x in w.iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        self.rows.push(w);
        self.pivots.push(c);
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn finish(self) -> Subspace {
        Subspace::span(self.p, self.ambient, &self.rows).expect("rows have ambient length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        assert_eq!(FpMatrix::identity(5, 3).rank(), 3);
    }

    #[test]
    fn zero_rank() {
        assert_eq!(FpMatrix::zeros(3, 4, 7).rank(), 0);
        assert_eq!(FpMatrix::zeros(3, 0, 0).rank(), 0);
    }

    #[test]
    fn span_examples() {
        let s = Subspace::span(3, 3, &[vec![1, 0, 0], vec![1, 1, 0]]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[2, 1, 0]));
        assert!(!s.contains(&[0, 0, 1]));
        assert_eq!(Subspace::span(3, 3, &[]).unwrap().dim(), 0);
    }

    #[test]
    fn span_rejects_mismatched_dimension() {
        assert!(Subspace::span(3, 3, &[vec![1, 0]]).is_err());
    }

    #[test]
    fn builder_agrees_with_span() {
        let vs = vec![vec![1, 2, 0, 1], vec![2, 4, 0, 2], vec![0, 1, 1, 0], vec![1, 3, 1, 1]];
        let mut b = SpanBuilder::new(5, 4);
        for v in &vs {
            b.push(v);
        }
        assert_eq!(b.dim(), Subspace::span(5, 4, &vs).unwrap().dim());
        assert_eq!(b.finish(), Subspace::span(5, 4, &vs).unwrap());
    }

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..30).filter(|&x| is_prime(x)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
