//! Linear algebra invariants against direct computations.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use pschur::linalg::zpe::{cokernel_exponents, EchelonModule, Zpe};
use pschur::linalg::{abelian_quotient_invariants, smith_normal_form};
use pschur::{FpMatrix, IntMatrix};

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

fn int_matrix(max: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        (Just(c), prop::collection::vec(prop::collection::vec(-20i64..=20, c), r))
    })
}

/// Fraction-free elimination.
fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn row_rank_is_column_rank(p in prime(), (cols, rows) in int_matrix(7)) {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect()).collect();
        let m = FpMatrix::from_rows(p, cols, &rows).unwrap();
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= rows.len().min(cols));
    }

    #[test]
    fn smith_divisors_form_a_chain((cols, rows) in int_matrix(6)) {
        let d = smith_normal_form(&IntMatrix::from_rows(cols, &rows).unwrap());
        prop_assert!(d.len() <= rows.len().min(cols));
        for w in d.windows(2) {
            prop_assert!(w[0].is_positive());
            prop_assert!((&w[1] % &w[0]).is_zero(), "{} does not divide {}", w[0], w[1]);
        }
    }

    #[test]
    fn smith_divisors_multiply_to_determinant(n in 1usize..6, seed in prop::collection::vec(-9i64..=9, 36)) {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..i * n + n].to_vec()).collect();
        let d = smith_normal_form(&IntMatrix::from_rows(n, &rows).unwrap());
        let det = det(rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect());
        if det == 0 {
            prop_assert!(d.len() < n);
        } else {
            prop_assert_eq!(d.len(), n);
            let prod: BigInt = d.iter().product();
            prop_assert_eq!(prod, BigInt::from(det.abs()));
        }
    }

    #[test]
    fn unit_divisors_count_the_rank_mod_p(p in prime(), (cols, rows) in int_matrix(6)) {
        let d = smith_normal_form(&IntMatrix::from_rows(cols, &rows).unwrap());
        let bp = BigInt::from(p);
        let units = d.iter().filter(|x| !(*x % &bp).is_zero()).count();
        let reduced: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect()).collect();
        prop_assert_eq!(units, FpMatrix::from_rows(p, cols, &reduced).unwrap().rank());
    }

    #[test]
    fn local_cokernel_matches_integer_smith(p in prime(), e in 1u32..4, (cols, rows) in int_matrix(6)) {
        let ring = Zpe::new(p, e);
        let q = (p as i64).pow(e);
        let local: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| ring.reduce(x)).collect()).collect();
        let got = cokernel_exponents(ring, local.clone(), cols);

        // Z^cols / (rows + p^e Z^cols), keeping only the p-part
        let mut all = rows.clone();
        for i in 0..cols {
            let mut r = vec![0; cols];
            r[i] = q;
            all.push(r);
        }
        let (want, free) = abelian_quotient_invariants(&IntMatrix::from_rows(cols, &all).unwrap(), cols, p)
            .unwrap_or_else(|_| panic!("p-power relations leave only p-torsion"));
        prop_assert_eq!(free, 0);
        let mut got = got;
        got.retain(|&k| k > 0);
        got.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(got, want.exponents().to_vec());

        let mut m = EchelonModule::new(ring, cols);
        for r in local {
            m.push(r);
        }
        let mut inc = cokernel_exponents(ring, m.into_rows(), cols);
        inc.retain(|&k| k > 0);
        inc.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(inc, want.exponents().to_vec());
    }
}
