//! Finite window search for the resurgence once `ρ̂` is known.
//!
//! A non-containment `I^(s) ⊄ I^r` forces `s/(r+N) < ρ̂`. So every
//! non-containment with `s/r >= ρ̂ + ε` has `r < N ρ̂ / ε`, and checking that
//! finite set either finds the exact resurgence or shows `ρ < ρ̂ + ε`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::bracket::Bracket;
use super::containment::{Containment, SchemeContext};
use super::rho_hat::RhoHat;
use super::witness::{best, ContainmentWitness};
use super::Limits;
use crate::error::{Error, Result};
use crate::fatpoints::MonomialFatScheme;
use crate::par;
use crate::rational::{ceil_u64, int, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct WindowResult {
    pub rho: Bracket,
    #[serde(serialize_with = "crate::rational::serialize_pq")]
    pub epsilon: Rational,
    pub pairs_checked: u64,
    /// Every non-containment found, ordered by `(r, s)`.
    pub witnesses: Vec<ContainmentWitness>,
}

/// The `(s, r)` pairs with `s/r >= ρ̂ + ε` and `s/(r+N) < ρ̂`, by `r` then `s`.
pub fn window_pairs(rho_hat: &Rational, epsilon: &Rational, big_n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let bound = int(i64::from(big_n)) * rho_hat;
    let mut r: u32 = 1;
    while int(i64::from(r)) * epsilon < bound {
        let lo = ceil_u64(&(int(i64::from(r)) * (rho_hat + epsilon)));
        let hi = rho_hat * int(i64::from(r + big_n));
        let mut s = lo;
        while int(s as i64) < hi {
            out.push((s as u32, r));
            s += 1;
        }
        r += 1;
    }
    out
}

/// Resurgence bracket from a certified `ρ̂` and a window width `ε`.
pub fn dd_window(z: &MonomialFatScheme, rho_hat: &RhoHat, epsilon: &Rational) -> Result<WindowResult> {
    dd_window_in(&SchemeContext::new(z, Limits::default())?, rho_hat, epsilon)
}

pub(crate) fn dd_window_in(
    ctx: &SchemeContext<'_>,
    rho_hat: &RhoHat,
    epsilon: &Rational,
) -> Result<WindowResult> {
    if !rho_hat.certified() {
        return Err(Error::Uncertified);
    }
    if *epsilon <= int(0) {
        return Err(Error::Precondition("window width must be positive".into()));
    }
    let value = &rho_hat.value;
    let pairs = window_pairs(value, epsilon, ctx.ambient());
    let limits = ctx.limits;
    if pairs.len() as u64 > limits.window_pair_cap {
        return Err(Error::resource("window pairs", pairs.len() as u128, u128::from(limits.window_pair_cap)));
    }
    let mut by_s: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &(s, r) in &pairs {
        by_s.entry(s).or_default().push(r);
    }
    let mut work: u64 = 0;
    let mut found: Vec<ContainmentWitness> = Vec::new();
    for (s, rs) in &by_s {
        let sym = ctx.symbolic_power(*s)?;
        work += sym.len() as u64 * rs.len() as u64;
        if work > limits.window_work_cap {
            return Err(Error::resource("window containment tests", u128::from(work), u128::from(limits.window_work_cap)));
        }
        let outcomes = par::map(rs, |&r| ctx.power_containment(&sym, *s, r));
        for o in outcomes {
            if let Containment::NotContained(w) = o? {
                found.push(w);
            }
        }
    }
    found.sort_by_key(|a| (a.r, a.m));
    let rho = match best(&found) {
        Some(w) => Bracket::exact(w.ratio()),
        None => Bracket::half_open(value.clone(), value + epsilon),
    };
    Ok(WindowResult {
        rho,
        epsilon: epsilon.clone(),
        pairs_checked: pairs.len() as u64,
        witnesses: found,
    })
}
