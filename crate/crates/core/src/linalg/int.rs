//! Integer matrices and Smith normal form over arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::input(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.push(r.iter().map(|&x| BigInt::from(x)).collect());
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        self.data[i][j] = v.into();
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::input("row length does not match column count"));
        }
        self.data.push(row);
        self.rows += 1;
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }
}

/// Nonzero elementary divisors `d1 | d2 | ... | dr` of `a`, where `r` is the rank.
pub fn smith_normal_form(a: &IntMatrix) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = a.data.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let cols = a.cols;
    let rows = m.len();
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_entry(&m, t..rows, t..cols) else {
            break;
        };
        m.swap(t, pi);
        swap_cols(&mut m, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = &m[i][t] / &m[t][t];
                if !q.is_zero() {
                    let (top, rest) = m.split_at_mut(i);
                    axpy_row(&mut rest[0], &top[t], &q, t);
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = &m[t][j] / &m[t][t];
                if !q.is_zero() {
                    for row in m.iter_mut().skip(t) {
                        if row[t].is_zero() {
                            continue;
                        }
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // Move the smallest remainder in the pivot row/column into place.
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    m.swap(t, best.0);
                }
                if best.1 != t {
                    swap_cols(&mut m, t, best.1);
                }
                continue;
            }
            // Pivot must divide the remaining block; otherwise fold a bad row in.
            let piv = m[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &piv).is_zero()));
            match bad {
                Some(i) => {
                    let (top, rest) = m.split_at_mut(i);
                    let src = rest[0].clone();
                    for (x, y) in top[t].iter_mut().zip(src) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        divisors.push(m[t][t].abs());
        t += 1;
    }
    divisors
}

fn min_entry(
    m: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if m[i][j].is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m[i][j].abs() >= m[bi][bj].abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `dst -= q * src`, touching columns from `from` onward.
fn axpy_row(dst: &mut [BigInt], src: &[BigInt], q: &BigInt, from: usize) {
    for j in from..dst.len() {
        if src[j].is_zero() {
            continue;
        }
        let d = q * &src[j];
        dst[j] -= d;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(rows: &[Vec<i64>]) -> Vec<i64> {
        let cols = rows.first().map_or(0, |r| r.len());
        let m = IntMatrix::from_rows(cols, rows).unwrap();
        smith_normal_form(&m)
            .into_iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn diagonal() {
        assert_eq!(snf(&[vec![2, 0], vec![0, 6]]), vec![2, 6]);
        assert_eq!(snf(&[vec![6, 0], vec![0, 4]]), vec![2, 12]);
    }

    #[test]
    fn rank_deficient() {
        assert_eq!(snf(&[vec![2, 4], vec![4, 8]]), vec![2]);
    }

    #[test]
    fn zero_and_empty() {
        assert!(snf(&[vec![0, 0, 0]]).is_empty());
        assert!(smith_normal_form(&IntMatrix::zeros(0, 4)).is_empty());
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2,3) has SNF diag(1,6).
        assert_eq!(snf(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }
}
