//! Text format for monomial ideals:
//!
//! ```text
//! # comment
//! vars: 3
//! x0*x1
//! x0^2*x2
//! ```
//!
//! One monomial per line; `1` is the unit monomial.

use super::{ExponentVector, MonomialIdeal};
use crate::error::{Error, Result};

pub fn parse_monomial(s: &str, nvars: usize) -> std::result::Result<ExponentVector, String> {
    let s = s.trim();
    let mut e = vec![0u32; nvars];
    if s == "1" {
        return Ok(ExponentVector::new(e));
    }
    for factor in s.split('*') {
        let factor = factor.trim();
        let (var, exp) = match factor.split_once('^') {
            Some((v, p)) => (
                v.trim(),
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("bad exponent in {factor:?}"))?,
            ),
            None => (factor, 1),
        };
        let idx: usize = var
            .strip_prefix('x')
            .and_then(|i| i.parse().ok())
            .ok_or_else(|| format!("bad variable {var:?}"))?;
        if idx >= nvars {
            return Err(format!("variable x{idx} out of range (vars: {nvars})"));
        }
        e[idx] = e[idx]
            .checked_add(exp)
            .ok_or_else(|| "exponent overflow".to_string())?;
    }
    Ok(ExponentVector::new(e))
}

pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let mut nvars: Option<usize> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            if nvars.is_some() {
                return Err(Error::parse(line_no, "duplicate vars header"));
            }
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(line_no, "vars must be a positive integer"))?;
            if n == 0 {
                return Err(Error::parse(line_no, "vars must be positive"));
            }
            nvars = Some(n);
            continue;
        }
        let n = nvars.ok_or_else(|| Error::parse(line_no, "monomial before `vars:` header"))?;
        gens.push(parse_monomial(line, n).map_err(|msg| Error::parse(line_no, msg))?);
    }
    let n = nvars.ok_or_else(|| Error::parse(1, "missing `vars:` header"))?;
    MonomialIdeal::from_generators(n, gens)
}

pub fn format_ideal(ideal: &MonomialIdeal) -> String {
    let mut out = format!("vars: {}\n", ideal.nvars());
    for g in ideal.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}
