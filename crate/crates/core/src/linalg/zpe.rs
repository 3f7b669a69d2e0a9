//! Dense linear algebra over the local ring Z/p^e.
//!
//! Every nonzero element is `p^v * unit`, so an entry of minimal valuation
//! divides everything else and elimination never needs gcd steps.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zpe {
    p: u64,
    e: u32,
    q: u64,
}

impl Zpe {
    pub fn new(p: u32, e: u32) -> Self {
        assert!(e >= 1);
        let q = (p as u64).checked_pow(e).expect("modulus overflows u64");
        assert!(q < (1 << 31), "modulus too large for u64 products");
        Zpe { p: p as u64, e, q }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.q as i64) as u64
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    /// p-adic valuation, `e` for zero.
    pub fn valuation(&self, mut x: u64) -> u32 {
        x %= self.q;
        if x == 0 {
            return self.e;
        }
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    fn unit_inverse(&self, u: u64) -> u64 {
        // extended Euclid; u is coprime to p
        let (mut r0, mut r1) = (self.q as i64, (u % self.q) as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let k = r0 / r1;
            (r0, r1) = (r1, r0 - k * r1);
            (s0, s1) = (s1, s0 - k * s1);
        }
        debug_assert_eq!(r0, 1, "not a unit");
        self.reduce(s0)
    }

    fn pow_p(&self, v: u32) -> u64 {
        self.p.pow(v)
    }
}

/// A generating set of a submodule of `R^cols`, compressed by elimination
/// so that it never holds many more than `cols` rows.
#[derive(Clone, Debug)]
pub struct RowModule {
    ring: Zpe,
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl RowModule {
    pub fn new(ring: Zpe, cols: usize) -> Self {
        RowModule {
            ring,
            cols,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<u64>) {
        debug_assert_eq!(row.len(), self.cols);
        if row.iter().all(|&x| x == 0) {
            return;
        }
        self.rows.push(row);
        if self.rows.len() > 2 * self.cols + 16 {
            self.compress();
        }
    }

    /// Echelonizes by row operations only; the module is unchanged.
    pub fn compress(&mut self) {
        let r = &self.ring;
        let mut rows = std::mem::take(&mut self.rows);
        let mut top = 0;
        for c in 0..self.cols {
            if top == rows.len() {
                break;
            }
            let mut best: Option<(usize, u32)> = None;
            for (i, row) in rows.iter().enumerate().skip(top) {
                if row[c] == 0 {
                    continue;
                }
                let v = r.valuation(row[c]);
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some((i, v));
                    if v == 0 {
                        break;
                    }
                }
            }
            let Some((bi, v)) = best else { continue };
            rows.swap(top, bi);
            let pv = r.pow_p(v);
            let unit = rows[top][c] / pv;
            let uinv = r.unit_inverse(unit);
            for x in rows[top].iter_mut() {
                *x = r.mul(*x, uinv);
            }
            let (head, tail) = rows.split_at_mut(top + 1);
            let piv = &head[top];
            for row in tail.iter_mut() {
                if row[c] == 0 {
                    continue;
                }
                let f = row[c] / pv;
                for j in c..self.cols {
                    if piv[j] != 0 {
                        row[j] = r.sub(row[j], r.mul(f, piv[j]));
                    }
                }
            }
            top += 1;
        }
        rows.truncate(top);
        rows.retain(|row| row.iter().any(|&x| x != 0));
        self.rows = rows;
    }

    pub fn into_rows(mut self) -> Vec<Vec<u64>> {
        self.compress();
        self.rows
    }
}

/// Rows kept in echelon form as they arrive: each stored row owns a
/// distinct pivot column and has minimal valuation among rows that reached
/// it. Every step is an invertible row operation, so the stored rows always
/// generate the submodule spanned by everything pushed.
#[derive(Clone, Debug)]
pub struct EchelonModule {
    ring: Zpe,
    cols: usize,
    /// `pivot[c]` = stored row whose leading column is `c`, leading entry `p^v`.
    pivot: Vec<Option<(Vec<u64>, u32)>>,
}

impl EchelonModule {
    pub fn new(ring: Zpe, cols: usize) -> Self {
        EchelonModule {
            ring,
            cols,
            pivot: vec![None; cols],
        }
    }

    pub fn rank_bound(&self) -> usize {
        self.pivot.iter().filter(|x| x.is_some()).count()
    }

    pub fn push(&mut self, mut row: Vec<u64>) {
        debug_assert_eq!(row.len(), self.cols);
        let r = self.ring;
        let mut c = 0;
        loop {
            while c < self.cols && row[c] == 0 {
                c += 1;
            }
            if c == self.cols {
                return;
            }
            let v = r.valuation(row[c]);
            let uinv = r.unit_inverse(row[c] / r.pow_p(v));
            for x in row[c..].iter_mut() {
                *x = r.mul(*x, uinv);
            }
            match &mut self.pivot[c] {
                None => {
                    self.pivot[c] = Some((row, v));
                    return;
                }
                Some((prow, pv)) => {
                    if v < *pv {
                        std::mem::swap(prow, &mut row);
                        *pv = v;
                    }
                    let pv = *pv;
                    let f = row[c] / r.pow_p(pv);
                    for (x, &y) in row[c..].iter_mut().zip(prow[c..].iter()) {
                        if y != 0 {
                            *x = r.sub(*x, r.mul(f, y));
                        }
                    }
                    debug_assert_eq!(row[c], 0);
                }
            }
        }
    }

    pub fn into_rows(self) -> Vec<Vec<u64>> {
        self.pivot.into_iter().flatten().map(|(row, _)| row).collect()
    }
}

/// Diagonalizes `rows` (an `m x cols` matrix over `ring`) and returns the
/// valuations of the nonzero diagonal entries, in nondecreasing order.
///
/// When `track` is given it must have `cols` rows; every column operation
/// applied to the matrix is mirrored as the inverse row operation on it, so
/// on return it holds `W^-1 * track` where `U * A * W` is the diagonal form.
pub fn local_snf(ring: Zpe, mut rows: Vec<Vec<u64>>, cols: usize, mut track: Option<&mut Vec<Vec<u64>>>) -> Vec<u32> {
    let r = ring;
    if let Some(t) = track.as_deref() {
        assert_eq!(t.len(), cols, "tracking matrix must have one row per column");
    }
    rows.retain(|row| row.iter().any(|&x| x != 0));
    let m = rows.len();
    let mut vals = Vec::new();
    let mut t = 0;
    while t < m.min(cols) {
        let mut best: Option<(usize, usize, u32)> = None;
        'search: for (i, row) in rows.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x == 0 {
                    continue;
                }
                let v = r.valuation(x);
                if best.is_none_or(|(_, _, bv)| v < bv) {
                    best = Some((i, j, v));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((bi, bj, v)) = best else { break };
        rows.swap(t, bi);
        if bj != t {
            for row in rows.iter_mut() {
                row.swap(t, bj);
            }
            if let Some(tr) = track.as_deref_mut() {
                tr.swap(t, bj);
            }
        }
        let pv = r.pow_p(v);
        let uinv = r.unit_inverse(rows[t][t] / pv);
        for x in rows[t].iter_mut() {
            *x = r.mul(*x, uinv);
        }
        let (head, tail) = rows.split_at_mut(t + 1);
        let piv = &head[t];
        for row in tail.iter_mut() {
            if row[t] == 0 {
                continue;
            }
            let f = row[t] / pv;
            for j in t..cols {
                if piv[j] != 0 {
                    row[j] = r.sub(row[j], r.mul(f, piv[j]));
                }
            }
        }
        // Column t is now clean below the pivot, so clearing row t by column
        // operations only touches row t itself.
        for j in t + 1..cols {
            let x = rows[t][j];
            if x == 0 {
                continue;
            }
            let f = x / pv;
            rows[t][j] = 0;
            if let Some(tr) = track.as_deref_mut() {
                // col_j -= f * col_t  mirrors as  row_t += f * row_j
                let (lo, hi) = tr.split_at_mut(j);
                for (x, &y) in lo[t].iter_mut().zip(hi[0].iter()) {
                    *x = (*x + r.mul(f, y)) % r.q;
                }
            }
        }
        vals.push(v);
        t += 1;
    }
    vals
}

/// Exponents of `R^cols / rowspace(rows)` as an abelian p-group.
pub fn cokernel_exponents(ring: Zpe, rows: Vec<Vec<u64>>, cols: usize) -> Vec<u32> {
    let vals = local_snf(ring, rows, cols, None);
    let mut out: Vec<u32> = vals.iter().copied().filter(|&v| v > 0).collect();
    out.extend(std::iter::repeat_n(ring.e(), cols - vals.len()));
    out
}
