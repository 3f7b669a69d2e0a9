//! Catalog constructions checked from outside the catalog.

mod common;

use pschur::bounds::{class3_sections, class3_sections_with, psi_dims};
use pschur::catalog::{self, is_quadratic_residue, Params};
use pschur::multiplier::schur_tails;
use pschur::pcgroup::{parse_presentation, to_dsl};
use pschur::{Error, GroupTable};

fn tails_exp(id: &str, params: &Params) -> u32 {
    schur_tails(&catalog::build(id, params).unwrap()).unwrap().order_exp
}

#[test]
fn phi15_multiplier_is_independent_of_the_nonresidue() {
    for p in [5u32, 7, 11] {
        let nonres: Vec<u32> = (2..p).filter(|&g| !is_quadratic_residue(g, p)).collect();
        assert!(nonres.len() >= 2);
        let exps: Vec<u32> = nonres
            .iter()
            .map(|&g| tails_exp("Phi15(1^6)", &Params { g: Some(g), ..Params::new(p) }))
            .collect();
        assert!(exps.iter().all(|&m| m == 8), "p = {p}: {exps:?}");
    }
}

#[test]
fn phi15_rejects_a_residue() {
    let r = catalog::build("Phi15(1^6)", &Params { g: Some(4), ..Params::new(7) });
    assert!(matches!(r, Err(Error::Parameter { .. })));
}

#[test]
fn hand_written_phi13_matches_the_catalog() {
    let text = include_str!("data/phi13_p3.pc");
    let user = parse_presentation(text).unwrap();
    let built = catalog::build("Phi13(1^6)", &Params::new(3)).unwrap();
    let a = schur_tails(&user).unwrap();
    let b = schur_tails(&built).unwrap();
    assert_eq!(a.invariants, b.invariants);
    assert_eq!(a.order_exp, 8);
}

#[test]
fn inconsistent_file_is_rejected() {
    let text = include_str!("data/not_pc.pc");
    assert!(parse_presentation(text).is_err());
}

#[test]
fn dsl_round_trips_every_catalog_group() {
    for (e, g) in common::catalog_groups() {
        let back = parse_presentation(&to_dsl(&g)).unwrap();
        assert_eq!(back.n(), g.n(), "{}", e.id);
        for i in 0..g.n() {
            assert_eq!(back.power_relation(i), g.power_relation(i), "{}", e.id);
            for j in i + 1..g.n() {
                assert_eq!(back.comm_relation(j, i), g.comm_relation(j, i), "{}", e.id);
            }
        }
    }
}

#[test]
fn psi_dims_ignore_coset_representatives() {
    let mut checked = 0;
    for (e, g) in common::catalog_groups() {
        if g.order() > 3usize.pow(6) as u128 {
            continue;
        }
        let t = GroupTable::new(&g).unwrap();
        let Ok(base) = class3_sections(&t) else { continue };
        let want = psi_dims(&t, &base);
        let lifts = base.u.lifts().to_vec();
        let zg = t.product(&t.center(), &t.derived_subgroup());
        // rotate the basis and move each lift by a different element of Z(G)G'
        for r in 0..lifts.len() {
            let moved: Vec<u32> = (0..lifts.len())
                .map(|i| {
                    let z = zg.elements()[(i * 7 + r * 3 + 1) % zg.order()];
                    t.mul(lifts[(i + r) % lifts.len()], z)
                })
                .collect();
            let alt = class3_sections_with(&t, &moved).unwrap();
            assert_eq!(alt.u.lifts(), &moved[..], "{}", e.id);
            assert_eq!(psi_dims(&t, &alt), want, "{} p={}", e.id, e.params.p);
        }
        checked += 1;
    }
    assert!(checked >= 6, "only {checked} class-3 groups");
}
