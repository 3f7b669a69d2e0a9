//! Every named group, as a consistent pc presentation with the structural
//! data it is expected to have.
//!
//! James's `α_i^(p)` is read as `α_i^p α_{i+1}^C(p,2) α_{i+2}^C(p,3) ...`,
//! where `α_{i+1} = [α_i, α]`. For `p >= 5` the correction terms vanish in
//! every group here; for `p = 3` the `α_{i+2}^C(3,3)` term survives.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::fp::pow_mod;
use crate::linalg::{is_prime, AbelianInvariants, FpMatrix};
use crate::multiplier::schur_tails;
use crate::pcgroup::{
    central_product, direct_product, involution_classes, semidirect_by_cyclic, semidirect_elem_abelian, GroupElement,
    GroupTable, PcBuilder, PcPresentation,
};

/// Parameters; `None` means the documented default.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub p: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub g: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub action: Option<usize>,
}

impl Params {
    pub fn new(p: u32) -> Self {
        Params { p, ..Default::default() }
    }
}

/// What a built group must look like. Fields left `None` are not claimed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    /// `|G| = p^n`
    pub n: usize,
    pub class: Option<usize>,
    /// log_p |G'|
    pub derived_exp: Option<u32>,
    /// log_p of the exponent
    pub exponent_exp: Option<u32>,
    pub t: Option<i64>,
    pub multiplier: Option<AbelianInvariants>,
    pub multiplier_exp: Option<u32>,
    pub dim_x: Option<usize>,
    pub dim_x1: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    /// Position in the Main Theorem list, 1 to 16.
    pub item: Option<u32>,
    pub params: Params,
    pub description: String,
    pub expected: Expected,
}

/// One way of realizing a group whose defining action is not pinned down.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub index: usize,
    pub description: String,
    pub presentation: PcPresentation,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<PcPresentation> {
        build(&self.id, &self.params)
    }

    /// All candidate realizations (a single one unless the id has free choices).
    /// Whether the group depends on a choice of action, listed by [`Self::candidates`].
    pub fn has_action_candidates(&self) -> bool {
        matches!(self.id.as_str(), ID_Z2_4_Z2 | ID_Z2_Z4Z2_Z2)
    }

    pub fn candidates(&self) -> Result<Vec<Candidate>> {
        match self.id.as_str() {
            ID_Z2_4_Z2 | ID_Z2_Z4Z2_Z2 => action_candidates(&self.id),
            _ => Ok(vec![Candidate {
                index: 0,
                description: self.description.clone(),
                presentation: self.build()?,
            }]),
        }
    }
}

const ID_Z2_4_Z2: &str = "Z2^4:Z2";
const ID_Z2_Z4Z2_Z2: &str = "Z2x(Z4xZ2):Z2";

/// Ids accepted by [`build`], besides the `Ab(e1,e2,...)` and
/// `ES(p,2m+1,exp p)` patterns.
pub const IDS: &[&str] = &[
    "Phi2(22)",
    "Phi3(211)a",
    "Phi3(211)b_r",
    "Phi2(2111)c",
    "Phi2(2111)d",
    "Phi3(1^5)",
    "Phi7(1^5)",
    "Phi11(1^6)",
    "Phi12(1^6)",
    "Phi13(1^6)",
    "Phi15(1^6)",
    "Phi13(1^6)-as-printed",
    "Phi15(1^6)-as-printed",
    "Phi4(1^5)xZp^2",
    ID_Z2_4_Z2,
    ID_Z2_Z4Z2_Z2,
    "Z4:Z4",
    "D16",
    "Phi2(211)a",
    "Phi2(1^4)",
    "Phi2(31)",
    "Phi2(211)b",
    "Phi2(211)c",
    "Phi3(1^4)",
    "PropK-capable",
    "ES(p,3,exp p)",
    "ES(p,5,exp p)",
    "E(2)",
    "D8",
    "Q8",
    "Phi4(1^5)",
];

fn param_err(id: &str, msg: impl Into<String>) -> Error {
    Error::Parameter {
        id: id.to_string(),
        msg: msg.into(),
    }
}

fn require_odd(id: &str, p: u32) -> Result<()> {
    if p == 2 {
        return Err(param_err(id, "defined for odd p only"));
    }
    Ok(())
}

fn require_two(id: &str, p: u32) -> Result<()> {
    if p != 2 {
        return Err(param_err(id, format!("a 2-group; got p = {p}")));
    }
    Ok(())
}

pub fn is_quadratic_residue(a: u32, p: u32) -> bool {
    !a.is_multiple_of(p) && pow_mod(a, (p - 1) / 2, p) == 1
}

/// Smallest quadratic nonresidue mod an odd prime.
pub fn smallest_nonresidue(p: u32) -> u32 {
    (2..p).find(|&a| !is_quadratic_residue(a, p)).expect("odd primes have nonresidues")
}

fn nonresidue_param(id: &str, params: &Params) -> Result<u32> {
    let p = params.p;
    let g = params.g.unwrap_or_else(|| smallest_nonresidue(p));
    if g.is_multiple_of(p) || is_quadratic_residue(g, p) {
        return Err(param_err(id, format!("g = {g} is not a quadratic nonresidue mod {p}")));
    }
    Ok(g)
}

fn binom_mod(n: u32, k: u32, p: u32) -> u32 {
    let mut c: u64 = 1;
    for i in 0..k as u64 {
        c = c * (n as u64 - i) / (i + 1);
    }
    (c % p as u64) as u32
}

fn neg(a: u32, p: u32) -> u32 {
    (p - a % p) % p
}

fn letters(pairs: &[(usize, u32)], p: u32) -> Vec<(usize, u32)> {
    pairs.iter().map(|&(g, e)| (g, e % p)).filter(|&(_, e)| e != 0).collect()
}

/// `Z/p^k` on `k` generators with `g_i^p = g_{i+1}`.
pub fn cyclic(p: u32, k: usize) -> Result<PcPresentation> {
    abelian(p, &[k as u32])
}

/// `⊕ Z/p^e_i`, each factor on its own chain of generators.
pub fn abelian(p: u32, exps: &[u32]) -> Result<PcPresentation> {
    let n: usize = exps.iter().map(|&e| e as usize).sum();
    let mut b = PcBuilder::new(p, n)?.label(format!("Ab{exps:?}"));
    let mut at = 0;
    for &e in exps {
        for i in 0..e as usize - 1 {
            b.power_word(at + i, &[(at + i + 1, 1)])?;
        }
        at += e as usize;
    }
    b.build()
}

/// Extraspecial `p^(2m+1)` with generators `x1, y1, ..., xm, ym, z`, `[y_i, x_i] = z`.
pub fn extraspecial(p: u32, m: usize) -> Result<PcPresentation> {
    let n = 2 * m + 1;
    let mut b = PcBuilder::new(p, n)?.label(format!("ES({p}^{n})"));
    for i in 0..m {
        b.comm_word(2 * i + 1, 2 * i, &[(n - 1, 1)])?;
    }
    b.build()
}

/// The two-Jordan-block action on `<α1, α2, β1, β2>`: `α_i -> α_i β_i`.
fn phi4_1_5(p: u32) -> Result<PcPresentation> {
    let m = FpMatrix::from_rows(
        p,
        4,
        &[vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
    )?;
    Ok(semidirect_elem_abelian(4, &m, p)?.with_label("Phi4(1^5)"))
}

/// Builds a catalog group.
pub fn build(id: &str, params: &Params) -> Result<PcPresentation> {
    let p = params.p;
    if !is_prime(p) {
        return Err(param_err(id, format!("{p} is not prime")));
    }
    let g = build_inner(id, params)?;
    Ok(g.with_label(id))
}

fn build_inner(id: &str, params: &Params) -> Result<PcPresentation> {
    let p = params.p;
    if let Some(inner) = id.strip_prefix("Ab(").and_then(|s| s.strip_suffix(')')) {
        let exps: Vec<u32> = inner
            .split(',')
            .map(|s| s.trim().parse::<u32>().map_err(|_| param_err(id, "bad exponent list")))
            .collect::<Result<_>>()?;
        if exps.contains(&0) {
            return Err(param_err(id, "exponents must be positive"));
        }
        return abelian(p, &exps);
    }
    if let Some(m) = parse_es(id) {
        require_odd(id, p)?;
        if m == 0 {
            return Err(param_err(id, "order must be p^(2m+1) with m >= 1"));
        }
        return extraspecial(p, m);
    }
    match id {
        // α, α1, α1^p, α2 = α^p; [α1, α] = α2
        "Phi2(22)" => {
            require_odd(id, p)?;
            let mut b = PcBuilder::new(p, 4)?;
            b.power_word(0, &[(3, 1)])?;
            b.power_word(1, &[(2, 1)])?;
            b.comm_word(1, 0, &[(3, 1)])?;
            b.build()
        }
        // α, α1, α2, α3; [α1,α] = α2, [α2,α] = α3, α^p = α3, α1^(p) = 1
        "Phi3(211)a" => {
            require_odd(id, p)?;
            let c3 = binom_mod(p, 3, p);
            let mut b = PcBuilder::new(p, 4)?;
            b.power_word(0, &[(3, 1)])?;
            b.power_word(1, &letters(&[(3, neg(c3, p))], p))?;
            b.comm_word(1, 0, &[(2, 1)])?;
            b.comm_word(2, 0, &[(3, 1)])?;
            b.build()
        }
        // [α1,α] = α2, [α2,α] = α3, α^p = 1, α1^(p) = α3^r
        "Phi3(211)b_r" => {
            require_odd(id, p)?;
            let r = params.r.unwrap_or(1);
            if r == 0 || r >= p {
                return Err(param_err(id, format!("r must lie in 1..{p}")));
            }
            let c3 = binom_mod(p, 3, p);
            let mut b = PcBuilder::new(p, 4)?;
            b.power_word(1, &letters(&[(3, (r + neg(c3, p)) % p)], p))?;
            b.comm_word(1, 0, &[(2, 1)])?;
            b.comm_word(2, 0, &[(3, 1)])?;
            b.build()
        }
        "Phi2(2111)c" => {
            require_odd(id, p)?;
            direct_product(&build_inner("Phi2(211)c", params)?, &cyclic(p, 1)?)
        }
        "Phi2(2111)d" => {
            require_odd(id, p)?;
            direct_product(&extraspecial(p, 1)?, &cyclic(p, 2)?)
        }
        "Phi3(1^5)" => {
            require_odd(id, p)?;
            direct_product(&build_inner("Phi3(1^4)", params)?, &cyclic(p, 1)?)
        }
        // α, α1, β, α2, α3; [α1,α] = α2, [α2,α] = α3, [α1,β] = α3
        "Phi7(1^5)" => {
            require_odd(id, p)?;
            let c3 = binom_mod(p, 3, p);
            let mut b = PcBuilder::new(p, 5)?;
            b.power_word(1, &letters(&[(4, neg(c3, p))], p))?;
            b.comm_word(1, 0, &[(3, 1)])?;
            b.comm_word(3, 0, &[(4, 1)])?;
            b.comm_word(2, 1, &[(4, p - 1)])?;
            b.build()
        }
        // α1, α2, α3, β1, β2, β3; [α1,α2] = β3, [α2,α3] = β1, [α3,α1] = β2
        "Phi11(1^6)" => {
            require_odd(id, p)?;
            let mut b = PcBuilder::new(p, 6)?;
            b.comm_word(1, 0, &[(5, p - 1)])?;
            b.comm_word(2, 1, &[(3, p - 1)])?;
            b.comm_word(2, 0, &[(4, 1)])?;
            b.build()
        }
        "Phi12(1^6)" => {
            require_odd(id, p)?;
            direct_product(&extraspecial(p, 1)?, &extraspecial(p, 1)?)
        }
        // α1..α4, β1, β2; [α1,α2] = β1, [α1,α3] = [α2,α4] = β2
        "Phi13(1^6)" => {
            require_odd(id, p)?;
            let mut b = PcBuilder::new(p, 6)?;
            b.comm_word(1, 0, &[(4, p - 1)])?;
            b.comm_word(2, 0, &[(5, p - 1)])?;
            b.comm_word(3, 1, &[(5, p - 1)])?;
            b.build()
        }
        // [α1,α2] = [α3,α4] = β1, [α1,α3] = β2, [α2,α4] = β2^g
        "Phi15(1^6)" => {
            require_odd(id, p)?;
            let g = nonresidue_param(id, params)?;
            let mut b = PcBuilder::new(p, 6)?;
            b.comm_word(1, 0, &[(4, p - 1)])?;
            b.comm_word(3, 2, &[(4, p - 1)])?;
            b.comm_word(2, 0, &[(5, p - 1)])?;
            b.comm_word(3, 1, &[(5, neg(g, p))])?;
            b.build()
        }
        // Index pattern [α_i, α_(i+1)] = β_i (i = 1, 2), [α2,α4] = β2.
        // α3 α4^-1 is central and outside G', so this is Φ4(1^5) x Z_p.
        "Phi13(1^6)-as-printed" => {
            require_odd(id, p)?;
            let mut b = PcBuilder::new(p, 6)?;
            b.comm_word(1, 0, &[(4, p - 1)])?;
            b.comm_word(2, 1, &[(5, p - 1)])?;
            b.comm_word(3, 1, &[(5, p - 1)])?;
            b.build()
        }
        // [α_i, α_(i+1)] = β_i (i = 1, 2), [α3,α4] = β1, [α2,α4] = β2^g.
        // Its pencil of forms has Pfaffian a^2: isoclinic to Φ13, not Φ15.
        "Phi15(1^6)-as-printed" => {
            require_odd(id, p)?;
            let g = nonresidue_param(id, params)?;
            let mut b = PcBuilder::new(p, 6)?;
            b.comm_word(1, 0, &[(4, p - 1)])?;
            b.comm_word(2, 1, &[(5, p - 1)])?;
            b.comm_word(3, 2, &[(4, p - 1)])?;
            b.comm_word(3, 1, &[(5, neg(g, p))])?;
            b.build()
        }
        "Phi4(1^5)xZp^2" => {
            require_odd(id, p)?;
            direct_product(&phi4_1_5(p)?, &abelian(p, &[1, 1])?)
        }
        ID_Z2_4_Z2 | ID_Z2_Z4Z2_Z2 => {
            require_two(id, p)?;
            let cands = action_candidates(id)?;
            let k = match params.action {
                Some(k) => k,
                None => default_action(id, &cands)?,
            };
            cands
                .into_iter()
                .find(|c| c.index == k)
                .map(|c| c.presentation)
                .ok_or_else(|| param_err(id, format!("no action with index {k}")))
        }
        // a, b, a^2, b^2; [b, a] = b^2
        "Z4:Z4" => {
            require_two(id, p)?;
            let mut b = PcBuilder::new(2, 4)?;
            b.power_word(0, &[(2, 1)])?;
            b.power_word(1, &[(3, 1)])?;
            b.comm_word(1, 0, &[(3, 1)])?;
            b.build()
        }
        // s, r, r^2, r^4
        "D16" => {
            require_two(id, p)?;
            let mut b = PcBuilder::new(2, 4)?;
            b.power_word(1, &[(2, 1)])?;
            b.power_word(2, &[(3, 1)])?;
            b.comm_word(1, 0, &[(2, 1), (3, 1)])?;
            b.comm_word(2, 0, &[(3, 1)])?;
            b.build()
        }
        "D8" => {
            let mut b = PcBuilder::new(2, 3)?;
            b.power_word(1, &[(2, 1)])?;
            b.comm_word(1, 0, &[(2, 1)])?;
            b.build()
        }
        "Q8" => {
            let mut b = PcBuilder::new(2, 3)?;
            b.power_word(0, &[(2, 1)])?;
            b.power_word(1, &[(2, 1)])?;
            b.comm_word(1, 0, &[(2, 1)])?;
            b.build()
        }
        // Φ2(21) x Z_p: α, α1, α^p, γ; [α1, α] = α^p
        "Phi2(211)a" => {
            require_odd(id, p)?;
            let mut b = PcBuilder::new(p, 4)?;
            b.power_word(0, &[(2, 1)])?;
            b.comm_word(1, 0, &[(2, 1)])?;
            b.build()
        }
        "Phi2(1^4)" => {
            require_odd(id, p)?;
            direct_product(&extraspecial(p, 1)?, &cyclic(p, 1)?)
        }
        // α, α1, α^p, α^(p^2); [α1, α] = α^(p^2)
        "Phi2(31)" => {
            require_odd(id, p)?;
            let mut b = PcBuilder::new(p, 4)?;
            b.power_word(0, &[(2, 1)])?;
            b.power_word(2, &[(3, 1)])?;
            b.comm_word(1, 0, &[(3, 1)])?;
            b.build()
        }
        // α, α1, γ, γ^p; [α1, α] = γ^p
        "Phi2(211)b" => {
            require_odd(id, p)?;
            let mut b = PcBuilder::new(p, 4)?;
            b.power_word(2, &[(3, 1)])?;
            b.comm_word(1, 0, &[(3, 1)])?;
            b.build()
        }
        // α, α1, α2, α^p; [α1, α] = α2
        "Phi2(211)c" => {
            require_odd(id, p)?;
            let mut b = PcBuilder::new(p, 4)?;
            b.power_word(0, &[(3, 1)])?;
            b.comm_word(1, 0, &[(2, 1)])?;
            b.build()
        }
        // [α_i, α] = α_{i+1}, α^p = α1^(p) = α2^(p) = α3^p = 1
        "Phi3(1^4)" => {
            require_odd(id, p)?;
            let c3 = binom_mod(p, 3, p);
            let mut b = PcBuilder::new(p, 4)?;
            b.power_word(1, &letters(&[(3, neg(c3, p))], p))?;
            b.comm_word(1, 0, &[(2, 1)])?;
            b.comm_word(2, 0, &[(3, 1)])?;
            b.build()
        }
        // x1..x5, c1, c2; [x2,x1] = [x5,x3] = c1, [x3,x1] = [x5,x4] = c2
        "PropK-capable" => {
            require_odd(id, p)?;
            let mut b = PcBuilder::new(p, 7)?;
            b.comm_word(1, 0, &[(5, 1)])?;
            b.comm_word(4, 2, &[(5, 1)])?;
            b.comm_word(2, 0, &[(6, 1)])?;
            b.comm_word(4, 3, &[(6, 1)])?;
            b.build()
        }
        "E(2)" => {
            require_odd(id, p)?;
            let m = params.m.unwrap_or(1) as usize;
            if m == 0 {
                return Err(param_err(id, "m must be at least 1"));
            }
            let es = extraspecial(p, m)?;
            let c = cyclic(p, 2)?;
            central_product(&es, &c, &es.generator(2 * m), &c.generator(1))
        }
        "Phi4(1^5)" => {
            require_odd(id, p)?;
            phi4_1_5(p)
        }
        _ => Err(Error::UnknownGroup(id.to_string())),
    }
}

/// `ES(p,2m+1,exp p)` -> `m`.
fn parse_es(id: &str) -> Option<usize> {
    let inner = id.strip_prefix("ES(p,")?.strip_suffix(",exp p)")?;
    let k: usize = inner.parse().ok()?;
    (k % 2 == 1).then_some((k.saturating_sub(1)) / 2)
}

/// Split extensions by an involution class of `Aut(A)`, one per class that
/// has a representative compatible with the pc series of `A`.
fn action_candidates(id: &str) -> Result<Vec<Candidate>> {
    let (a, outer) = match id {
        ID_Z2_4_Z2 => (PcPresentation::elementary_abelian(2, 4)?.with_label("Z2^4"), false),
        // x1, x2, x1^2
        _ => {
            let mut b = PcBuilder::new(2, 3)?.label("Z4xZ2");
            b.power_word(0, &[(2, 1)])?;
            (b.build()?, true)
        }
    };
    let t = GroupTable::new(&a)?;
    let mut out = Vec::new();
    for (k, class) in involution_classes(&t)?.into_iter().enumerate() {
        let Some(rep) = class.representative else { continue };
        let images = rep.generator_images(&t);
        let mut g = semidirect_by_cyclic(&a, &images)?;
        if outer {
            g = direct_product(&cyclic(2, 1)?, &g)?;
        }
        out.push(Candidate {
            index: k,
            description: format!(
                "involution class {k} (size {}): {}",
                class.size,
                describe_images(&images)
            ),
            presentation: g.with_label(id),
        });
    }
    Ok(out)
}

fn describe_images(images: &[GroupElement]) -> String {
    images
        .iter()
        .enumerate()
        .map(|(i, x)| format!("a{} -> {}", i + 1, format!("{x:?}").replace('g', "a")))
        .collect::<Vec<_>>()
        .join(", ")
}

/// First candidate (in class order) with `t(G) = n + 1`.
fn default_action(id: &str, cands: &[Candidate]) -> Result<usize> {
    for c in cands {
        let n = c.presentation.n();
        let m = schur_tails(&c.presentation)?.order_exp as usize;
        if n * (n - 1) / 2 == m + n + 1 {
            return Ok(c.index);
        }
    }
    Err(param_err(id, "no action gives t(G) = n + 1"))
}

fn main_entry(id: &str, item: u32, p: u32, n: usize, class: usize, derived_exp: u32, description: &str) -> CatalogEntry {
    let mult = (n * (n - 1) / 2 - (n + 1)) as u32;
    CatalogEntry {
        id: id.to_string(),
        item: Some(item),
        params: Params::new(p),
        description: description.to_string(),
        expected: Expected {
            n,
            class: Some(class),
            derived_exp: Some(derived_exp),
            t: Some(n as i64 + 1),
            multiplier_exp: Some(mult),
            ..Default::default()
        },
    }
}

/// The groups of the classification for the prime `p`.
pub fn main_theorem_list(p: u32) -> Result<Vec<CatalogEntry>> {
    if !is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    if p == 2 {
        return Ok(vec![
            main_entry(ID_Z2_4_Z2, 13, 2, 5, 2, 1, "Z2^4 semidirect Z2"),
            main_entry(ID_Z2_Z4Z2_Z2, 14, 2, 5, 2, 1, "Z2 x ((Z4 x Z2) semidirect Z2)"),
            main_entry("Z4:Z4", 15, 2, 4, 2, 1, "Z4 semidirect Z4"),
            main_entry("D16", 16, 2, 4, 3, 2, "dihedral group of order 16"),
        ]
        .into_iter()
        .map(|mut e| {
            // the action, and with it G', is not fixed for these two
            if e.item.is_some_and(|k| k <= 14) {
                e.expected.class = None;
                e.expected.derived_exp = None;
            }
            e
        })
        .collect());
    }
    let mut v = vec![
        main_entry("Phi2(22)", 1, p, 4, 2, 1, "[a1,a] = a^p = a2, a1^(p^2) = a2^p = 1"),
        main_entry("Phi3(211)a", 2, p, 4, 3, 2, "[a1,a] = a2, [a2,a] = a^p = a3, a1^(p) = a2^p = a3^p = 1"),
        main_entry("Phi3(211)b_r", 3, p, 4, 3, 2, "[a1,a] = a2, [a2,a] = a3, a^p = 1, a1^(p) = a3^r"),
        main_entry("Phi2(2111)c", 4, p, 5, 2, 1, "Phi2(211)c x Zp"),
        main_entry("Phi2(2111)d", 5, p, 5, 2, 1, "ES_p(p^3) x Zp^2"),
        main_entry("Phi3(1^5)", 6, p, 5, 3, 2, "Phi3(1^4) x Zp"),
        main_entry("Phi7(1^5)", 7, p, 5, 3, 2, "[ai,a] = a(i+1), [a1,b] = a3"),
        main_entry("Phi11(1^6)", 8, p, 6, 2, 3, "[a1,a2] = b3, [a2,a3] = b1, [a3,a1] = b2"),
        main_entry("Phi12(1^6)", 9, p, 6, 2, 2, "ES_p(p^3) x ES_p(p^3)"),
        main_entry("Phi13(1^6)", 10, p, 6, 2, 2, "[a1,a2] = b1, [a1,a3] = [a2,a4] = b2"),
        main_entry("Phi15(1^6)", 11, p, 6, 2, 2, "[a1,a2] = [a3,a4] = b1, [a1,a3] = b2, [a2,a4] = b2^g"),
        main_entry("Phi4(1^5)xZp^2", 12, p, 7, 2, 2, "(Zp^4 semidirect Zp) x Zp^2"),
    ];
    for e in v.iter_mut() {
        match e.id.as_str() {
            "Phi2(22)" | "Phi3(211)a" | "Phi3(211)b_r" => {
                e.expected.multiplier = Some(AbelianInvariants::elementary(p, 1));
            }
            "Phi11(1^6)" => {
                e.expected.dim_x = Some(1);
                e.expected.dim_x1 = Some(1);
                e.expected.exponent_exp = Some(1);
            }
            "Phi12(1^6)" | "Phi13(1^6)" | "Phi15(1^6)" => {
                e.expected.dim_x = Some(4);
                e.expected.dim_x1 = Some(4);
                e.expected.exponent_exp = Some(1);
            }
            _ => {}
        }
        if e.id == "Phi3(211)b_r" {
            e.params.r = Some(1);
        }
        if e.id == "Phi15(1^6)" {
            e.params.g = Some(smallest_nonresidue(p));
        }
    }
    Ok(v)
}

fn aux_entry(id: &str, p: u32, n: usize, description: &str) -> CatalogEntry {
    CatalogEntry {
        id: id.to_string(),
        item: None,
        params: Params::new(p),
        description: description.to_string(),
        expected: Expected {
            n,
            ..Default::default()
        },
    }
}

/// The order-p^4 table, the capable order-p^7 group, extraspecial and
/// related quotients, and the small 2-groups.
pub fn auxiliary_list(p: u32) -> Result<Vec<CatalogEntry>> {
    if !is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    let mut v = Vec::new();
    if p != 2 {
        let zp = |k: usize| AbelianInvariants::elementary(p, k);
        let table: [(&str, usize, u32, AbelianInvariants, &str); 9] = [
            ("Phi2(211)a", 2, 1, zp(2), "Phi2(21) x Zp"),
            ("Phi2(1^4)", 2, 1, zp(4), "ES_p(p^3) x Zp"),
            ("Phi2(31)", 2, 1, zp(0), "[a1,a] = a^(p^2), a1^p = 1"),
            ("Phi2(22)", 2, 1, zp(1), "[a1,a] = a^p, a1^(p^2) = 1"),
            ("Phi2(211)b", 2, 1, zp(2), "ES_p(p^3) central product Zp^2"),
            ("Phi2(211)c", 2, 1, zp(2), "[a1,a] = a2, a^(p^2) = a1^p = a2^p = 1"),
            ("Phi3(211)a", 3, 2, zp(1), "maximal class, a^p = a3"),
            ("Phi3(211)b_r", 3, 2, zp(1), "maximal class, a1^(p) = a3^r"),
            ("Phi3(1^4)", 3, 2, zp(2), "maximal class, exponent p for p > 3"),
        ];
        for (id, class, d, m, desc) in table {
            let mut e = aux_entry(id, p, 4, desc);
            e.expected.class = Some(class);
            e.expected.derived_exp = Some(d);
            e.expected.multiplier_exp = Some(m.order_exp());
            e.expected.multiplier = Some(m);
            if id == "Phi3(211)b_r" {
                e.params.r = Some(1);
            }
            v.push(e);
        }
        let mut k = aux_entry("PropK-capable", p, 7, "[x2,x1] = [x5,x3] = c1, [x3,x1] = [x5,x4] = c2");
        k.expected.class = Some(2);
        k.expected.derived_exp = Some(2);
        k.expected.exponent_exp = Some(1);
        k.expected.multiplier_exp = Some(9);
        k.expected.dim_x = Some(9);
        k.expected.dim_x1 = Some(9);
        v.push(k);
        for m in 1..=2u32 {
            let n = 2 * m as usize + 1;
            let mut e = aux_entry(&format!("ES(p,{n},exp p)"), p, n, "extraspecial of exponent p");
            e.params.m = Some(m);
            e.expected.class = Some(2);
            e.expected.derived_exp = Some(1);
            e.expected.exponent_exp = Some(1);
            v.push(e);
        }
        let mut e2 = aux_entry("E(2)", p, 4, "ES(p^(2m+1)) central product Zp^2, m = 1");
        e2.params.m = Some(1);
        e2.expected.class = Some(2);
        e2.expected.derived_exp = Some(1);
        v.push(e2);
        let mut phi4 = aux_entry("Phi4(1^5)", p, 5, "Zp^4 semidirect Zp, two Jordan blocks");
        phi4.expected.class = Some(2);
        phi4.expected.derived_exp = Some(2);
        phi4.expected.multiplier_exp = Some(6);
        v.push(phi4);
    }
    for (id, desc) in [("D8", "dihedral of order 8"), ("Q8", "quaternion of order 8")] {
        let mut e = aux_entry(id, 2, 3, desc);
        e.expected.class = Some(2);
        e.expected.derived_exp = Some(1);
        v.push(e);
    }
    Ok(v)
}

/// Resolves an id to an entry, using list metadata when the id is listed.
pub fn entry(id: &str, params: &Params) -> Result<CatalogEntry> {
    let mut lists = main_theorem_list(params.p)?;
    lists.extend(auxiliary_list(params.p)?);
    let mut e = match lists.into_iter().find(|e| e.id == id) {
        Some(e) => e,
        None => {
            let g = build(id, params)?;
            aux_entry(id, params.p, g.n(), "")
        }
    };
    if params.r.is_some() {
        e.params.r = params.r;
    }
    if params.g.is_some() {
        e.params.g = params.g;
    }
    if params.m.is_some() && params.m != e.params.m {
        // the listed expectations are for the listed m
        e.params.m = params.m;
        let n = e.build()?.n();
        e.expected = Expected { n, ..Expected::default() };
        e.description = e.description.replace(" m = 1", &format!(" m = {}", params.m.unwrap_or(1)));
    }
    if params.action.is_some() {
        e.params.action = params.action;
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonresidues() {
        assert_eq!(smallest_nonresidue(3), 2);
        assert_eq!(smallest_nonresidue(5), 2);
        assert_eq!(smallest_nonresidue(7), 3);
        assert!(is_quadratic_residue(4, 5));
    }

    #[test]
    fn binomials_mod_p() {
        assert_eq!(binom_mod(3, 3, 3), 1);
        assert_eq!(binom_mod(5, 3, 5), 0);
        assert_eq!(binom_mod(3, 2, 3), 0);
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(build("Phi2(22)", &Params::new(2)), Err(Error::Parameter { .. })));
        let mut q = Params::new(5);
        q.g = Some(4);
        assert!(matches!(build("Phi15(1^6)", &q), Err(Error::Parameter { .. })));
        assert!(matches!(build("nope", &Params::new(3)), Err(Error::UnknownGroup(_))));
        assert!(matches!(build("D16", &Params::new(3)), Err(Error::Parameter { .. })));
    }

    #[test]
    fn es_pattern() {
        assert_eq!(parse_es("ES(p,5,exp p)"), Some(2));
        assert_eq!(parse_es("ES(p,4,exp p)"), None);
        assert_eq!(build("ES(p,7,exp p)", &Params::new(3)).unwrap().n(), 7);
    }

    #[test]
    fn list_sizes() {
        assert_eq!(main_theorem_list(3).unwrap().len(), 12);
        assert_eq!(main_theorem_list(2).unwrap().len(), 4);
    }

    #[test]
    fn overriding_m_drops_listed_expectations() {
        let e = entry("E(2)", &Params { m: Some(2), ..Params::new(3) }).unwrap();
        assert_eq!(e.expected.n, 6);
        assert!(e.expected.class.is_none());
        assert!(e.description.ends_with("m = 2"));
        let same = entry("E(2)", &Params { m: Some(1), ..Params::new(3) }).unwrap();
        assert_eq!(same.expected.class, Some(2));
    }
}

#[cfg(test)]
mod build_tests {
    use super::*;

    #[test]
    fn every_entry_matches_its_expectations() {
        for p in [2u32, 3, 5] {
            let mut all = main_theorem_list(p).unwrap();
            all.extend(auxiliary_list(p).unwrap());
            for e in all {
                let g = e.build().unwrap_or_else(|err| panic!("{} p={p}: {err}", e.id));
                assert_eq!(g.n(), e.expected.n, "{}", e.id);
                let m = schur_tails(&g).unwrap();
                if let Some(x) = e.expected.multiplier_exp {
                    assert_eq!(m.order_exp, x, "{} p={p}", e.id);
                }
                if let Some(x) = &e.expected.multiplier {
                    assert_eq!(m.invariants.as_ref().unwrap(), x, "{} p={p}", e.id);
                }
                let t = GroupTable::new(&g).unwrap();
                if let Some(c) = e.expected.class {
                    assert_eq!(t.nilpotency_class(), c, "{} p={p}", e.id);
                }
                if let Some(x) = e.expected.dim_x {
                    let (_, d) = crate::multiplier::blackburn_evens(&t).unwrap();
                    assert_eq!((d.x.dim(), d.x1.dim()), (x, e.expected.dim_x1.unwrap()), "{} p={p}", e.id);
                }
                if let Some(d) = e.expected.derived_exp {
                    assert_eq!(t.derived_subgroup().order(), (e.params.p as u64).pow(d) as usize, "{} p={p}", e.id);
                }
            }
        }
    }
}

#[cfg(test)]
mod printed_forms {
    use super::*;

    fn stats(id: &str, p: u32) -> (u32, usize, usize) {
        let g = build(id, &Params::new(p)).unwrap();
        let t = GroupTable::new(&g).unwrap();
        let (_, d) = crate::multiplier::blackburn_evens(&t).unwrap();
        (schur_tails(&g).unwrap().order_exp, t.center().order(), d.x.dim())
    }

    #[test]
    fn literal_phi13_has_a_central_factor() {
        for p in [3u32, 5] {
            let q = p as usize;
            assert_eq!(stats("Phi13(1^6)-as-printed", p), (9, q * q * q, 3));
            assert_eq!(stats("Phi13(1^6)", p), (8, q * q, 4));
        }
    }

    #[test]
    fn literal_phi15_still_has_t_equal_n_plus_one() {
        for p in [3u32, 5] {
            let q = p as usize;
            assert_eq!(stats("Phi15(1^6)-as-printed", p), (8, q * q, 4));
            assert_eq!(stats("Phi15(1^6)", p), (8, q * q, 4));
        }
    }
}
