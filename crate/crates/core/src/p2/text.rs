//! Plane scheme files:
//!
//! ```text
//! p2-scheme
//! point: 1 0 0 mult: 2
//! point: 3 -1 4 mult: 1
//! line: 1 1 1
//! ```

use super::{Field, LinearForm, PlaneFatScheme, PlanePoint};
use crate::error::{Error, Result};

fn triple(s: &str, line_no: usize) -> Result<[i64; 3]> {
    let v = s
        .split_whitespace()
        .map(str::parse::<i64>)
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::parse(line_no, "coordinates must be integers"))?;
    <[i64; 3]>::try_from(v).map_err(|_| Error::parse(line_no, "expected three coordinates"))
}

/// The scheme and the optional `line:` entry.
pub fn parse_p2_scheme(text: &str, field: Field) -> Result<(PlaneFatScheme, Option<LinearForm>)> {
    let mut header = false;
    let mut points = Vec::new();
    let mut line = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if !header {
            if body != "p2-scheme" {
                return Err(Error::parse(line_no, "expected `p2-scheme` header"));
            }
            header = true;
            continue;
        }
        if let Some(rest) = body.strip_prefix("point:") {
            let (c, mult) = rest
                .split_once("mult:")
                .ok_or_else(|| Error::parse(line_no, "missing `mult:`"))?;
            let mult: u32 = mult
                .trim()
                .parse()
                .map_err(|_| Error::parse(line_no, "mult must be a positive integer"))?;
            let q = PlanePoint::new(triple(c, line_no)?).map_err(|e| Error::parse(line_no, e.to_string()))?;
            points.push((q, mult));
            PlaneFatScheme::new(points.clone(), field).map_err(|e| Error::parse(line_no, e.to_string()))?;
        } else if let Some(rest) = body.strip_prefix("line:") {
            if line.is_some() {
                return Err(Error::parse(line_no, "duplicate `line:`"));
            }
            line = Some(LinearForm::new(triple(rest, line_no)?).map_err(|e| Error::parse(line_no, e.to_string()))?);
        } else {
            return Err(Error::parse(line_no, format!("unrecognized line {body:?}")));
        }
    }
    if !header {
        return Err(Error::parse(1, "missing `p2-scheme` header"));
    }
    Ok((PlaneFatScheme::new(points, field)?, line))
}

pub fn format_p2_scheme(z: &PlaneFatScheme, line: Option<&LinearForm>) -> String {
    let mut out = String::from("p2-scheme\n");
    for (q, m) in z.points() {
        let [a, b, c] = q.coords();
        out.push_str(&format!("point: {a} {b} {c} mult: {m}\n"));
    }
    if let Some(l) = line {
        let [a, b, c] = l.coeffs();
        out.push_str(&format!("line: {a} {b} {c}\n"));
    }
    out
}
