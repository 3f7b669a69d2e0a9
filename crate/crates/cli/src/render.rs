//! Fixed-width text rendering. JSON is the canonical format; these tables
//! are for people.

use std::fmt::Write;

use pschur::bounds::{BoundReport, BoundStatus};
use pschur::verify::VerificationReport;
use pschur::{CatalogEntry, MultiplierResult};

pub fn catalog(entries: &[CatalogEntry]) -> String {
    let mut s = String::new();
    writeln!(s, "{:<5} {:<24} {:>3}  description", "item", "id", "n").unwrap();
    for e in entries {
        let item = e.item.map_or("-".to_string(), |k| k.to_string());
        writeln!(s, "{:<5} {:<24} {:>3}  {}", item, e.id, e.expected.n, e.description).unwrap();
    }
    s
}

pub fn show(e: &CatalogEntry, dsl: &str) -> String {
    let mut s = String::new();
    writeln!(s, "# {} (p = {}): {}", e.id, e.params.p, e.description).unwrap();
    let x = &e.expected;
    if let Some(t) = x.t {
        writeln!(s, "# expected t(G) = {t}").unwrap();
    }
    if let Some(m) = &x.multiplier {
        writeln!(s, "# expected M(G) = {m}").unwrap();
    } else if let Some(m) = x.multiplier_exp {
        writeln!(s, "# expected |M(G)| = p^{m}").unwrap();
    }
    s.push_str(dsl);
    s
}

fn diagnostics(r: &MultiplierResult) -> String {
    let d = &r.diagnostics;
    let mut parts = Vec::new();
    if let Some(x) = d.dim_x {
        parts.push(format!("dimX={x}"));
    }
    if let Some(x) = d.dim_x1 {
        parts.push(format!("dimX1={x}"));
    }
    if let Some(x) = d.dim_x2 {
        parts.push(format!("dimX2={x}"));
    }
    if let Some(x) = d.free_rank {
        parts.push(format!("freeRank={x}"));
    }
    if let Some(x) = d.stabilization_e {
        parts.push(format!("e={x}"));
    }
    parts.join(" ")
}

pub fn multiplier(id: &str, n: usize, results: &[MultiplierResult], t: i64, s: Option<i64>) -> String {
    let mut out = String::new();
    writeln!(out, "{id}: |G| = p^{n}").unwrap();
    for r in results {
        let inv = r.invariants.as_ref().map_or("(order only)".to_string(), |i| i.to_string());
        writeln!(out, "  {:<8} |M| = p^{:<3} M = {:<16} {}", r.method.to_string(), r.order_exp, inv, diagnostics(r)).unwrap();
    }
    if t != 0 || s.is_some() {
        write!(out, "  t(G) = {t}").unwrap();
        if let Some(s) = s {
            write!(out, ", s(G) = {s}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn bounds(r: &BoundReport) -> String {
    let mut s = String::new();
    writeln!(s, "{}", r.group).unwrap();
    for e in &r.entries {
        let status = match e.status {
            BoundStatus::Pass => "pass",
            BoundStatus::Fail => "FAIL",
            BoundStatus::Skipped => "skip",
        };
        let bound = e.bound_exp.map_or("-".to_string(), |b| b.to_string());
        write!(s, "  {:<13} bound {:>3}  |M| {:>3}  {}", e.name, bound, e.computed_exp, status).unwrap();
        if let (Some(a), Some(b)) = (e.psi2_dim, e.psi3_dim) {
            write!(s, "  psi2={a} psi3={b}").unwrap();
        }
        if let Some(k) = e.subgroups_checked {
            write!(s, "  ({k} central K)").unwrap();
        }
        if let Some(n) = &e.note {
            write!(s, "  {n}").unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn report(r: &VerificationReport) -> String {
    let mut s = String::new();
    writeln!(s, "p = {}", r.p).unwrap();
    writeln!(
        s,
        "{:<4} {:<16} {:>2} {:>4} {:>3} {:>4}  {:<16} {:<8} result",
        "item", "id", "n", "|M|", "t", "n+1", "M", "method"
    )
    .unwrap();
    for g in &r.groups {
        let item = g.item.map_or("-".to_string(), |k| k.to_string());
        let inv = g.invariants.as_ref().map_or("-".to_string(), |i| i.to_string());
        let methods: Vec<String> = g.results.iter().map(|m| m.method.to_string()).collect();
        writeln!(
            s,
            "{:<4} {:<16} {:>2} {:>4} {:>3} {:>4}  {:<16} {:<8} {}",
            item,
            g.id,
            g.n,
            g.multiplier_exp,
            g.t,
            g.n + 1,
            inv,
            methods.join("+"),
            if g.pass { "pass" } else { "FAIL" }
        )
        .unwrap();
        for f in &g.failures {
            writeln!(s, "     ! {f}").unwrap();
        }
        if let Some(cands) = &g.candidates {
            for c in cands {
                let mark = if c.satisfies { "t = n+1" } else { "t != n+1" };
                writeln!(s, "     candidate {}: t = {} ({mark}); {}", c.index, c.t, c.description).unwrap();
            }
        }
    }
    writeln!(
        s,
        "{}/{} pass ({} ms)",
        r.summary.passed, r.summary.total, r.timing_ms
    )
    .unwrap();
    s
}
