#![allow(dead_code)]

use pschur::catalog::{auxiliary_list, main_theorem_list, CatalogEntry};
use pschur::PcPresentation;

/// Every catalog group for the primes the suites run on.
pub fn catalog_groups() -> Vec<(CatalogEntry, PcPresentation)> {
    let mut out = Vec::new();
    for p in [2u32, 3, 5] {
        let mut all = main_theorem_list(p).unwrap();
        all.extend(auxiliary_list(p).unwrap());
        for e in all {
            // D8 and Q8 appear in every auxiliary list
            if out.iter().any(|(f, _): &(CatalogEntry, PcPresentation)| f.id == e.id && f.params.p == e.params.p) {
                continue;
            }
            let g = e.build().unwrap();
            out.push((e, g));
        }
    }
    out
}

/// `Ab(e1,...)` for every partition of `k` into at most `k` parts.
pub fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}
