//! The verification pipeline: every listed group must have corank `n + 1`,
//! every engine that applies must agree, and every bound must hold.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{audit, BoundReport};
use crate::catalog::{self, CatalogEntry, Params};
use crate::error::{Error, Result};
use crate::linalg::AbelianInvariants;
use crate::multiplier::{blackburn_evens, corank_report, schur_tails, Method, MultiplierResult};
use crate::oracle::schur_from_h2;
use crate::pcgroup::{GroupTable, PcPresentation};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub oracle_cap: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            oracle_cap: crate::oracle::DEFAULT_ORACLE_CAP,
        }
    }
}

/// Runs one engine. BE needs odd `p`, class 2 and elementary sections; the
/// oracle needs `|G| <= oracle_cap`.
pub fn run_method(g: &PcPresentation, t: &GroupTable, method: Method, oracle_cap: u64) -> Result<MultiplierResult> {
    match method {
        Method::Be => blackburn_evens(t).map(|(r, _)| r),
        Method::Tails => schur_tails(g),
        Method::Oracle => schur_from_h2(t, oracle_cap, None),
        Method::AbelianFormula => {
            if !t.derived_subgroup().is_trivial() {
                return Err(Error::precondition("group is not abelian"));
            }
            let inv = t.abelianization()?;
            Ok(MultiplierResult::from_invariants(
                Method::AbelianFormula,
                crate::multiplier::multiplier_of_abelian(&inv),
            ))
        }
        Method::ProductFormula => Err(Error::precondition("the product formula needs the factors")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub index: usize,
    pub description: String,
    pub multiplier_exp: u32,
    pub t: i64,
    pub satisfies: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub item: Option<u32>,
    pub params: Params,
    pub n: usize,
    /// The method whose answer is reported; the others are cross-checks.
    pub preferred: Method,
    pub results: Vec<MultiplierResult>,
    pub multiplier_exp: u32,
    pub invariants: Option<AbelianInvariants>,
    pub t: i64,
    pub s: Option<i64>,
    pub expected_t: Option<i64>,
    pub bounds: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub candidates: Option<Vec<CandidateRecord>>,
    pub failures: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub version: String,
    pub p: u32,
    pub groups: Vec<GroupRecord>,
    pub summary: Summary,
    pub pass: bool,
    pub timing_ms: u64,
}

fn check_agreement(results: &[MultiplierResult], failures: &mut Vec<String>) {
    let Some(first) = results.first() else { return };
    for r in &results[1..] {
        if r.order_exp != first.order_exp {
            failures.push(format!(
                "{} gives |M| = p^{} but {} gives p^{}",
                r.method, r.order_exp, first.method, first.order_exp
            ));
        }
        if let (Some(a), Some(b)) = (&first.invariants, &r.invariants) {
            if a != b {
                failures.push(format!("{} gives M = {b} but {} gives {a}", r.method, first.method));
            }
        }
    }
}

/// Checks a single group against its expectations.
pub fn verify_group(entry: &CatalogEntry, g: &PcPresentation, opts: VerifyOptions) -> Result<GroupRecord> {
    let ctx = |e: Error| e.with_context(&entry.id);
    let t = GroupTable::new(g).map_err(ctx)?;
    let mut results = Vec::new();
    let mut failures = Vec::new();

    let be = match blackburn_evens(&t) {
        Ok((r, _)) => Some(r),
        Err(Error::Precondition(_)) => None,
        Err(e) => return Err(ctx(e)),
    };
    let tails = schur_tails(g).map_err(ctx)?;
    let preferred = if be.is_some() { Method::Be } else { Method::Tails };
    if let Some(r) = be {
        results.push(r);
    }
    results.push(tails.clone());
    match schur_from_h2(&t, opts.oracle_cap, None) {
        Ok(r) => results.push(r),
        Err(Error::OracleCap { .. }) => {}
        Err(e) => return Err(ctx(e)),
    }
    check_agreement(&results, &mut failures);

    let m = results[0].order_exp;
    let abelian = t.derived_subgroup().is_trivial();
    let corank = corank_report(g.n(), m, abelian);
    let x = &entry.expected;
    if let Some(et) = x.t {
        if corank.t != et {
            failures.push(format!("t(G) = {} but expected {et}", corank.t));
        }
    }
    if let Some(em) = x.multiplier_exp {
        if m != em {
            failures.push(format!("|M| = p^{m} but expected p^{em}"));
        }
    }
    if let Some(inv) = &x.multiplier {
        if tails.invariants.as_ref() != Some(inv) {
            failures.push(format!("M = {} but expected {inv}", tails.invariants.as_ref().expect("tails gives invariants")));
        }
    }
    if let Some(r) = results.iter().find(|r| r.method == Method::Be) {
        if let Some(dx) = x.dim_x {
            if r.diagnostics.dim_x != Some(dx) {
                failures.push(format!("dim X = {:?} but expected {dx}", r.diagnostics.dim_x));
            }
        }
        if let Some(dx) = x.dim_x1 {
            if r.diagnostics.dim_x1 != Some(dx) {
                failures.push(format!("dim X1 = {:?} but expected {dx}", r.diagnostics.dim_x1));
            }
        }
    }

    let bounds = audit(&entry.id, &t, m).map_err(ctx)?;
    for e in bounds.entries.iter().filter(|e| e.status == crate::bounds::BoundStatus::Fail) {
        failures.push(format!("bound {} fails: {:?} < {}", e.name, e.bound_exp, e.computed_exp));
    }

    // entries not from the catalog (read from files) have no item number
    let candidates = if entry.item.is_some() && entry.has_action_candidates() {
        let mut recs = Vec::new();
        for c in entry.candidates().map_err(ctx)? {
            let mc = schur_tails(&c.presentation).map_err(ctx)?.order_exp;
            let ct = corank_report(c.presentation.n(), mc, false).t;
            recs.push(CandidateRecord {
                index: c.index,
                description: c.description,
                multiplier_exp: mc,
                t: ct,
                satisfies: ct == c.presentation.n() as i64 + 1,
            });
        }
        if !recs.iter().any(|r| r.satisfies) {
            failures.push("no candidate action satisfies t = n + 1".to_string());
        }
        Some(recs)
    } else {
        None
    };

    Ok(GroupRecord {
        id: entry.id.clone(),
        item: entry.item,
        params: entry.params.clone(),
        n: g.n(),
        preferred,
        invariants: tails.invariants.clone(),
        multiplier_exp: m,
        t: corank.t,
        s: corank.s,
        expected_t: x.t,
        pass: failures.is_empty(),
        results,
        bounds,
        candidates,
        failures,
    })
}

fn report(p: u32, groups: Vec<GroupRecord>, start: Instant) -> VerificationReport {
    let passed = groups.iter().filter(|g| g.pass).count();
    VerificationReport {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION").to_string(),
        p,
        summary: Summary {
            total: groups.len(),
            passed,
            failed: groups.len() - passed,
        },
        pass: passed == groups.len(),
        groups,
        timing_ms: start.elapsed().as_millis() as u64,
    }
}

fn verify_entries(p: u32, entries: &[CatalogEntry], opts: VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let groups = entries
        .par_iter()
        .map(|e| {
            let g = e.build().map_err(|err| err.with_context(&e.id))?;
            verify_group(e, &g, opts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report(p, groups, start))
}

/// Every group of the classification for `p`.
pub fn verify_main(p: u32, opts: VerifyOptions) -> Result<VerificationReport> {
    verify_entries(p, &catalog::main_theorem_list(p)?, opts)
}

/// The nine groups of order `p^4` with their stated multipliers.
pub fn table_shhh(p: u32, opts: VerifyOptions) -> Result<VerificationReport> {
    if p == 2 {
        return Err(Error::input("the order-p^4 table is for odd p"));
    }
    let rows: Vec<CatalogEntry> = catalog::auxiliary_list(p)?
        .into_iter()
        .filter(|e| e.expected.n == 4 && e.expected.multiplier.is_some())
        .collect();
    verify_entries(p, &rows, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let r = table_shhh(3, VerifyOptions::default()).unwrap();
        assert!(r.pass, "{:?}", r.groups.iter().flat_map(|g| g.failures.clone()).collect::<Vec<_>>());
        assert_eq!(r.summary.total, 9);
        let s = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
