//! Plain-text group format.
//!
//! ```text
//! # extraspecial group of order 27, exponent 3
//! p = 3
//! gens = 3
//! comm 2 1 = g3
//! pow 1 = 1
//! ```
//!
//! Generators are 1-based. `pow i = w` sets `g_i^p = w`, `comm j i = w`
//! sets `[g_j, g_i] = w` for `j > i`; `w` is a normal-form word such as
//! `g3^2 g4`, or `1`. Unlisted relations are trivial. An optional
//! `label = ...` line names the group.

use super::presentation::{format_word, PcBuilder, PcPresentation, Word};
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses and validates (including the consistency check) a presentation.
pub fn parse_presentation(text: &str) -> Result<PcPresentation> {
    let mut p: Option<(u32, usize)> = None;
    let mut n: Option<(usize, usize)> = None;
    let mut label = String::new();
    let mut rels: Vec<(usize, String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| perr(line_no, format!("expected `key = value`, found `{line}`")))?;
        let lhs = lhs.trim();
        let rhs = rhs.trim();
        match lhs {
            "p" => {
                let v: u32 = rhs.parse().map_err(|_| perr(line_no, format!("bad prime `{rhs}`")))?;
                p = Some((v, line_no));
            }
            "gens" => {
                let v: usize = rhs.parse().map_err(|_| perr(line_no, format!("bad generator count `{rhs}`")))?;
                n = Some((v, line_no));
            }
            "label" => label = rhs.to_string(),
            _ => rels.push((line_no, lhs.to_string(), rhs.to_string())),
        }
    }
    let (p, p_line) = p.ok_or_else(|| perr(0, "missing `p = <prime>`"))?;
    let (n, _) = n.ok_or_else(|| perr(0, "missing `gens = <count>`"))?;
    let mut b = PcBuilder::new(p, n).map_err(|e| perr(p_line, e.to_string()))?.label(label);

    for (line_no, lhs, rhs) in rels {
        let parts: Vec<&str> = lhs.split_whitespace().collect();
        let word = parse_word(&rhs, p, n).map_err(|m| perr(line_no, m))?;
        let index = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| perr(line_no, format!("bad generator index `{s}`")))?;
            if v == 0 || v > n {
                return Err(perr(line_no, format!("generator index {v} out of range 1..={n}")));
            }
            Ok(v - 1)
        };
        match parts.as_slice() {
            ["pow", i] => {
                let i = index(i)?;
                b.power_word(i, &word).map_err(|e| perr(line_no, e.to_string()))?;
            }
            ["comm", j, i] => {
                let (j, i) = (index(j)?, index(i)?);
                b.comm_word(j, i, &word).map_err(|e| perr(line_no, e.to_string()))?;
            }
            _ => return Err(perr(line_no, format!("unknown directive `{lhs}`"))),
        }
    }
    b.build()
}

/// Parses `g3^2 g4` (or `1`) into letters; the word must already be collected.
pub fn parse_word(s: &str, p: u32, n: usize) -> std::result::Result<Word, String> {
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out: Word = Vec::new();
    for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
        let body = tok.strip_prefix('g').ok_or_else(|| format!("bad letter `{tok}`"))?;
        let (g, e) = match body.split_once('^') {
            Some((g, e)) => (g, e.parse::<u32>().map_err(|_| format!("bad exponent in `{tok}`"))?),
            None => (body, 1),
        };
        let g: usize = g.parse().map_err(|_| format!("bad generator in `{tok}`"))?;
        if g == 0 || g > n {
            return Err(format!("generator g{g} out of range"));
        }
        if e == 0 || e >= p {
            return Err(format!("exponent {e} in `{tok}` must lie in 1..{p}"));
        }
        if out.last().is_some_and(|&(last, _)| last >= g - 1) {
            return Err(format!("word `{s}` is not in normal form"));
        }
        out.push((g - 1, e));
    }
    Ok(out)
}

/// Renders a presentation in the text format; [`parse_presentation`] inverts it.
pub fn to_dsl(g: &PcPresentation) -> String {
    let mut s = String::new();
    if !g.label().is_empty() {
        s.push_str(&format!("label = {}\n", g.label()));
    }
    s.push_str(&format!("p = {}\ngens = {}\n", g.p(), g.n()));
    for i in 0..g.n() {
        let w = g.power_relation(i);
        if !w.is_empty() {
            s.push_str(&format!("pow {} = {}\n", i + 1, format_word(w)));
        }
    }
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            let w = g.comm_relation(j, i);
            if !w.is_empty() {
                s.push_str(&format!("comm {} {} = {}\n", j + 1, i + 1, format_word(w)));
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const ES27: &str = "# exponent 3\np = 3\ngens = 3\ncomm 2 1 = g3\n";

    #[test]
    fn parses_extraspecial() {
        let g = parse_presentation(ES27).unwrap();
        assert_eq!(g.order(), 27);
        assert_eq!(g.comm_relation(1, 0), &[(2, 1)]);
    }

    #[test]
    fn round_trip() {
        let text = "label = Z9xZ3\np = 3\ngens = 3\npow 1 = g2\ncomm 3 1 = 1\n";
        let g = parse_presentation(text).unwrap();
        let again = parse_presentation(&to_dsl(&g)).unwrap();
        assert_eq!(g, again);
        assert_eq!(again.label(), "Z9xZ3");
    }

    #[test]
    fn garbled_relation_reports_line() {
        let text = "p = 3\ngens = 3\ncomm 2 1 = h3\n";
        match parse_presentation(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inconsistent_file_names_overlap() {
        let text = "p = 3\ngens = 3\npow 1 = g2\ncomm 2 1 = g3\n";
        assert!(matches!(parse_presentation(text), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn word_must_be_collected() {
        assert!(parse_word("g3 g2", 3, 4).is_err());
        assert!(parse_word("g2^3", 3, 4).is_err());
        assert_eq!(parse_word("g2^2 g4", 3, 4).unwrap(), vec![(1, 2), (3, 1)]);
    }
}
