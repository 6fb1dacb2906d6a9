//! Scheme files:
//!
//! ```text
//! ambient: 2
//! prime: 1 2 mult: 1
//! prime: 0 2 mult: 1
//! ```

use super::MonomialFatScheme;
use crate::error::{Error, Result};

pub fn parse_scheme(text: &str) -> Result<MonomialFatScheme> {
    let mut ambient: Option<(usize, usize)> = None;
    let mut comps: Vec<(usize, Vec<usize>, u32)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("ambient:") {
            if ambient.is_some() {
                return Err(Error::parse(line_no, "duplicate ambient header"));
            }
            let n = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(line_no, "ambient must be a positive integer"))?;
            ambient = Some((n, line_no));
            continue;
        }
        let Some(rest) = line.strip_prefix("prime:") else {
            return Err(Error::parse(line_no, format!("unrecognized line {line:?}")));
        };
        let (vars, mult) = rest
            .split_once("mult:")
            .ok_or_else(|| Error::parse(line_no, "missing `mult:`"))?;
        let vars = vars
            .split_whitespace()
            .map(|v| v.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::parse(line_no, "prime variables must be indices"))?;
        let mult = mult
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, "mult must be a nonnegative integer"))?;
        comps.push((line_no, vars, mult));
    }
    let (n, header_line) = ambient.ok_or_else(|| Error::parse(1, "missing `ambient:` header"))?;
    // Validate component by component so errors carry a line number.
    let mut checked = Vec::with_capacity(comps.len());
    for (line_no, vars, mult) in comps {
        checked.push((vars, mult));
        MonomialFatScheme::new(n, checked.clone()).map_err(|e| match e {
            Error::InvalidScheme(msg) => Error::parse(line_no, msg),
            other => other,
        })?;
    }
    MonomialFatScheme::new(n, checked).map_err(|e| match e {
        Error::InvalidScheme(msg) => Error::parse(header_line, msg),
        other => other,
    })
}

pub fn format_scheme(z: &MonomialFatScheme) -> String {
    let mut out = format!("ambient: {}\n", z.ambient());
    for c in z.components() {
        let vars: Vec<String> = c.prime.vars().iter().map(usize::to_string).collect();
        out.push_str(&format!("prime: {} mult: {}\n", vars.join(" "), c.mult));
    }
    out
}
