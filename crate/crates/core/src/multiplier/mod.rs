//! Schur multiplier engines and the corank bookkeeping around them.

pub mod be;
pub mod formulas;
pub mod tails;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::AbelianInvariants;

pub use be::{blackburn_evens, BEData};
pub use formulas::{multiplier_of_abelian, multiplier_of_direct_product, tensor_of_abelian};
pub use tails::{schur_tails, tail_relations};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Be,
    Tails,
    Oracle,
    ProductFormula,
    AbelianFormula,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Be => "be",
            Method::Tails => "tails",
            Method::Oracle => "oracle",
            Method::ProductFormula => "product-formula",
            Method::AbelianFormula => "abelian-formula",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim_x: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim_x1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim_x2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub free_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stabilization_e: Option<u32>,
}

/// `|M(G)| = p^order_exp`, with the invariants when the engine provides them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierResult {
    pub method: Method,
    pub order_exp: u32,
    pub invariants: Option<AbelianInvariants>,
    pub diagnostics: Diagnostics,
}

impl MultiplierResult {
    pub fn from_invariants(method: Method, inv: AbelianInvariants) -> Self {
        MultiplierResult {
            method,
            order_exp: inv.order_exp(),
            invariants: Some(inv),
            diagnostics: Diagnostics::default(),
        }
    }
}

/// Corank `t` and generalized corank `s` (the latter only for non-abelian groups).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corank {
    pub t: i64,
    pub s: Option<i64>,
}

/// `t = n(n-1)/2 - m`, `s = (n-1)(n-2)/2 + 1 - m` for `|G| = p^n`, `|M| = p^m`.
pub fn corank_report(n: usize, multiplier_exp: u32, abelian: bool) -> Corank {
    let n = n as i64;
    let m = multiplier_exp as i64;
    Corank {
        t: n * (n - 1) / 2 - m,
        s: (!abelian).then(|| (n - 1) * (n - 2) / 2 + 1 - m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corank_values() {
        assert_eq!(corank_report(4, 1, false), Corank { t: 5, s: Some(3) });
        assert_eq!(corank_report(5, 10, true), Corank { t: 0, s: None });
        assert_eq!(corank_report(4, 1, false).t, 5);
    }

    #[test]
    fn method_serializes_kebab() {
        assert_eq!(serde_json::to_string(&Method::ProductFormula).unwrap(), "\"product-formula\"");
    }
}
