//! Collection laws checked on every catalog group.

mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use pschur::{GroupElement, GroupTable, PcPresentation};

fn element(p: u32, n: usize) -> impl Strategy<Value = GroupElement> {
    proptest::collection::vec(0..p, n).prop_map(GroupElement)
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

#[test]
fn associativity_ten_thousand_triples_per_group() {
    for (e, g) in common::catalog_groups() {
        let (p, n) = (g.p(), g.n());
        runner(10_000)
            .run(&(element(p, n), element(p, n), element(p, n)), |(a, b, c)| {
                let left = g.multiply(&g.multiply(&a, &b), &c);
                let right = g.multiply(&a, &g.multiply(&b, &c));
                prop_assert_eq!(left, right);
                Ok(())
            })
            .unwrap_or_else(|err| panic!("{} p={}: {err}", e.id, e.params.p));
    }
}

#[test]
fn normal_forms_are_fixed_and_unique() {
    for (e, g) in common::catalog_groups() {
        // collecting a normal form word returns it unchanged
        let (p, n) = (g.p(), g.n());
        runner(500)
            .run(&element(p, n), |a| {
                let w: Vec<(usize, i64)> = a.letters().iter().map(|&(i, k)| (i, k as i64)).collect();
                prop_assert_eq!(g.collect(&w).unwrap(), a);
                Ok(())
            })
            .unwrap();
        // the table enumerates p^n distinct normal forms
        let t = GroupTable::new(&g).unwrap();
        let mut seen = vec![false; t.order()];
        for x in 0..t.order() as u32 {
            let idx = t.index_of(&t.element(x)) as usize;
            assert_eq!(idx, x as usize, "{}", e.id);
            assert!(!std::mem::replace(&mut seen[idx], true));
        }
    }
}

#[test]
fn random_words_collect_like_products() {
    for (_, g) in common::catalog_groups() {
        let (p, n) = (g.p() as i64, g.n());
        let word = proptest::collection::vec((0..n, -2 * p..2 * p), 0..12);
        runner(300)
            .run(&word, |w| {
                let mut acc = g.identity();
                for &(i, k) in &w {
                    let gi = g.generator(i);
                    let step = if k >= 0 {
                        g.power(&gi, k as u64)
                    } else {
                        g.inverse(&g.power(&gi, (-k) as u64))
                    };
                    acc = g.multiply(&acc, &step);
                }
                prop_assert_eq!(g.collect(&w).unwrap(), acc);
                Ok(())
            })
            .unwrap();
    }
}

fn hall_witt(g: &PcPresentation, x: &GroupElement, y: &GroupElement, z: &GroupElement) -> GroupElement {
    // [[x, y^-1], z]^y [[y, z^-1], x]^z [[z, x^-1], y]^x = 1
    let term = |a: &GroupElement, b: &GroupElement, c: &GroupElement| {
        let inner = g.commutator(a, &g.inverse(b));
        g.conjugate(&g.commutator(&inner, c), b)
    };
    let t1 = term(x, y, z);
    let t2 = term(y, z, x);
    let t3 = term(z, x, y);
    g.multiply(&g.multiply(&t1, &t2), &t3)
}

#[test]
fn hall_witt_identity() {
    for (_, g) in common::catalog_groups() {
        let (p, n) = (g.p(), g.n());
        runner(300)
            .run(&(element(p, n), element(p, n), element(p, n)), |(x, y, z)| {
                prop_assert!(hall_witt(&g, &x, &y, &z).is_identity());
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn table_matches_collection() {
    for (_, g) in common::catalog_groups().into_iter().filter(|(_, g)| g.order() <= 729) {
        let t = GroupTable::new(&g).unwrap();
        let (p, n) = (g.p(), g.n());
        runner(200)
            .run(&(element(p, n), element(p, n)), |(a, b)| {
                let (ia, ib) = (t.index_of(&a), t.index_of(&b));
                prop_assert_eq!(t.element(t.mul(ia, ib)), g.multiply(&a, &b));
                prop_assert_eq!(t.element(t.inverse(ia)), g.inverse(&a));
                Ok(())
            })
            .unwrap();
    }
}
