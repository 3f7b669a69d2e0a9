//! The three multiplier engines against each other and against the closed
//! formulas for abelian groups and direct products.

mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use pschur::catalog::{abelian, cyclic};
use pschur::multiplier::be::{be_data, be_data_with_basis};
use pschur::multiplier::formulas::{multiplier_of_abelian, multiplier_of_direct_product};
use pschur::multiplier::{blackburn_evens, schur_tails};
use pschur::oracle::{frattini_basis, h2_of, schur_from_h2, schur_from_mul, CocycleSystem, MulGroup};
use pschur::pcgroup::construct::direct_product;
use pschur::{AbelianInvariants, GroupTable, PcPresentation};

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn tails_invariants(g: &PcPresentation) -> AbelianInvariants {
    schur_tails(g).unwrap().invariants.unwrap()
}

#[test]
fn tails_matches_abelian_formula_on_random_abelian_groups() {
    let strat = (prop::sample::select(vec![2u32, 3, 5]), prop::collection::vec(1u32..4, 1..5));
    runner(200)
        .run(&strat, |(p, exps)| {
            let g = abelian(p, &exps).unwrap();
            let want = multiplier_of_abelian(&AbelianInvariants::new(p, exps.clone()));
            prop_assert_eq!(tails_invariants(&g), want);
            Ok(())
        })
        .unwrap();
}

/// Small factors with known multipliers, for the product formula.
fn small_factors(p: u32) -> Vec<PcPresentation> {
    let mut out: Vec<PcPresentation> = (1..=2).map(|k| cyclic(p, k).unwrap()).collect();
    for (e, g) in common::catalog_groups() {
        if e.params.p == p && g.n() <= 4 {
            out.push(g);
        }
    }
    out
}

#[test]
fn tails_matches_product_formula_on_random_pairs() {
    for p in [2u32, 3, 5] {
        let factors = small_factors(p);
        let k = factors.len();
        runner(40)
            .run(&(0..k, 0..k), |(i, j)| {
                let (a, b) = (&factors[i], &factors[j]);
                prop_assume!(a.n() + b.n() <= 7);
                let ab = direct_product(a, b).unwrap();
                let ta = GroupTable::new(a).unwrap().abelianization().unwrap();
                let tb = GroupTable::new(b).unwrap().abelianization().unwrap();
                let want = multiplier_of_direct_product(&tails_invariants(a), &tails_invariants(b), &ta, &tb);
                prop_assert_eq!(tails_invariants(&ab), want, "{} x {}", a.label(), b.label());
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn oracle_matches_abelian_formula_up_to_order_64() {
    for (p, max_k) in [(2u32, 6u32), (3, 3), (5, 2), (7, 2)] {
        for k in 1..=max_k {
            for part in common::partitions(k) {
                let g = abelian(p, &part).unwrap();
                let t = GroupTable::new(&g).unwrap();
                let got = schur_from_h2(&t, 64, None).unwrap().invariants.unwrap();
                let want = multiplier_of_abelian(&AbelianInvariants::new(p, part.clone()));
                assert_eq!(got, want, "p = {p}, {part:?}");
            }
        }
    }
}

#[test]
fn oracle_matches_tails_on_the_catalog() {
    for (e, g) in common::catalog_groups() {
        if g.order() > 128 {
            continue;
        }
        let t = GroupTable::new(&g).unwrap();
        let oracle = schur_from_h2(&t, 128, None).unwrap();
        assert_eq!(oracle.invariants.unwrap(), tails_invariants(&g), "{} at p = {}", e.id, e.params.p);
    }
}

#[test]
fn oracle_ignores_element_labels() {
    let mut cases: Vec<(String, PcPresentation)> =
        common::catalog_groups().into_iter().filter(|(_, g)| g.order() <= 81).map(|(e, g)| (e.id, g)).collect();
    cases.truncate(12);
    for (id, g) in cases {
        let t = GroupTable::new(&g).unwrap();
        let n = t.order();
        runner(3)
            .run(&Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle(), |perm| {
                let mut inv = vec![0u32; n];
                for (x, &y) in perm.iter().enumerate() {
                    inv[y as usize] = x as u32;
                }
                let mul = |x: u32, y: u32| perm[t.mul(inv[x as usize], inv[y as usize]) as usize];
                let g2 = MulGroup {
                    order: n,
                    identity: perm[0],
                    mul: &mul,
                    gens: frattini_basis(&t).iter().map(|&s| perm[s as usize]).collect(),
                    p: t.p(),
                };
                let ab = t.abelianization().unwrap();
                let shuffled = schur_from_mul(&g2, &ab, t.n() as u32 + 1).unwrap();
                prop_assert_eq!(shuffled.invariants, Some(tails_invariants(&g)), "{}", id);
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn reduced_oracle_matches_full_cocycle_complex() {
    for (e, g) in common::catalog_groups() {
        if g.order() > 27 {
            continue;
        }
        let t = GroupTable::new(&g).unwrap();
        let mul = |x: u32, y: u32| t.mul(x, y);
        let mg = MulGroup {
            order: t.order(),
            identity: 0,
            mul: &mul,
            gens: frattini_basis(&t),
            p: t.p(),
        };
        let full = CocycleSystem::new(&mg);
        assert!(full.composite_is_zero());
        for k in 1..=3 {
            assert_eq!(h2_of(&mg, k).unwrap(), full.h2(k).unwrap(), "{} at e = {k}", e.id);
        }
    }
}

fn class_two_odd() -> Vec<(String, PcPresentation, GroupTable)> {
    common::catalog_groups()
        .into_iter()
        .filter(|(e, _)| e.params.p != 2)
        .filter_map(|(e, g)| {
            let t = GroupTable::new(&g).unwrap();
            be_data(&t).is_ok().then(|| (format!("{} p={}", e.id, e.params.p), g, t))
        })
        .collect()
}

#[test]
fn be_matches_tails() {
    let groups = class_two_odd();
    assert!(groups.len() >= 20);
    for (id, g, t) in groups {
        let (be, _) = blackburn_evens(&t).unwrap();
        assert_eq!(be.order_exp, schur_tails(&g).unwrap().order_exp, "{id}");
    }
}

#[test]
fn v_tensor_f_v_lies_in_x2() {
    for (id, _, t) in class_two_odd() {
        let data = be_data(&t).unwrap();
        let (p, dv) = (data.p, data.dim_v);
        runner(50)
            .run(&prop::collection::vec(0..p, dv), |v| {
                let fv = data.f(&t, &v);
                prop_assert!(data.x2.contains(&data.tensor(&v, &fv)), "{}", id);
                // f is linear: f(v) is the combination of the basis images
                let mut lin = vec![0u32; data.dim_w];
                for (i, &a) in v.iter().enumerate() {
                    for (s, &y) in data.f_images[i].iter().enumerate() {
                        lin[s] = (lin[s] + a * y) % p;
                    }
                }
                prop_assert_eq!(fv, lin);
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn be_dimensions_ignore_the_choice_of_basis() {
    for (id, _, t) in class_two_odd() {
        let base = be_data(&t).unwrap();
        let lifts = base.lifts().to_vec();
        let derived: Vec<u32> = t.derived_subgroup().elements().to_vec();
        let strat = (Just(lifts.clone()).prop_shuffle(), prop::collection::vec(prop::sample::select(derived), lifts.len()));
        runner(8)
            .run(&strat, |(perm, shifts)| {
                // reorder the basis and move each lift within its coset of G'
                let moved: Vec<u32> = perm.iter().zip(&shifts).map(|(&l, &d)| t.mul(l, d)).collect();
                let other = be_data_with_basis(&t, &moved).unwrap();
                prop_assert_eq!(other.x1.dim(), base.x1.dim(), "{}", id);
                prop_assert_eq!(other.x2.dim(), base.x2.dim(), "{}", id);
                prop_assert_eq!(other.x.dim(), base.x.dim(), "{}", id);
                Ok(())
            })
            .unwrap();
    }
}
