//! Resurgence estimates from a symbolic power that generates its own
//! multiples: if `I^(at) = (I^(a))^t` for all `t`, then for `A = a s N` and
//! `B` the largest `b` with `I^(A) ⊆ I^b`, we get `A/(B+1) <= ρ` and
//! `ρ̂ <= A/B`.

use serde::Serialize;

use super::containment::{Containment, SchemeContext};
use super::witness::ContainmentWitness;
use super::Limits;
use crate::error::{Error, Result};
use crate::fatpoints::MonomialFatScheme;
use crate::par;
use crate::rational::{ceil_u64, int, ratio, serialize_pq, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct DenkertEstimate {
    pub a: u32,
    pub s: u32,
    #[serde(rename = "A")]
    pub big_a: u32,
    #[serde(rename = "B")]
    pub big_b: u32,
    #[serde(serialize_with = "serialize_pq")]
    pub epsilon: Rational,
    #[serde(serialize_with = "serialize_pq")]
    pub rho_lower: Rational,
    #[serde(serialize_with = "serialize_pq")]
    pub rho_upper_if_window_clear: Rational,
    #[serde(serialize_with = "serialize_pq")]
    pub rho_hat_upper: Rational,
    /// `N/(as+1) + ε`, the promised width of the bracket.
    #[serde(serialize_with = "serialize_pq")]
    pub accuracy: Rational,
    /// `I^(A) ⊄ I^(B+1)`.
    pub witness: ContainmentWitness,
    /// `(m, r)` with `A/B + ε <= m/r < N` and `r < B ⌈A/(Bε)⌉`.
    #[serde(skip)]
    pub residual_window: Vec<(u32, u32)>,
    pub residual_window_size: usize,
}

/// Checks `I^(at) = (I^(a))^t` for `t <= t_check`.
pub fn denkert_precondition(ctx: &SchemeContext<'_>, a: u32, t_check: u32) -> Result<Option<u32>> {
    let base = ctx.symbolic_power(a)?;
    let mut acc = base.clone();
    for t in 2..=t_check {
        acc = acc.multiply_capped(&base, ctx.limits.power_cap)?;
        if acc != ctx.symbolic_power(a * t)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

pub fn denkert_estimate(
    z: &MonomialFatScheme,
    a: u32,
    s: u32,
    epsilon: &Rational,
    t_check: u32,
) -> Result<DenkertEstimate> {
    denkert_in(&SchemeContext::new(z, Limits::default())?, a, s, epsilon, t_check)
}

pub(crate) fn denkert_in(
    ctx: &SchemeContext<'_>,
    a: u32,
    s: u32,
    epsilon: &Rational,
    t_check: u32,
) -> Result<DenkertEstimate> {
    if a == 0 || s == 0 || *epsilon <= int(0) {
        return Err(Error::Precondition("a, s and ε must be positive".into()));
    }
    if let Some(t) = denkert_precondition(ctx, a, t_check)? {
        return Err(Error::Precondition(format!(
            "I^({}) differs from (I^({a}))^{t}",
            a * t
        )));
    }
    let big_n = ctx.ambient();
    let big_a = a * s * big_n;
    let sym = ctx.symbolic_power(big_a)?;
    // I^(Nk) ⊆ I^k holds for points, so B >= as.
    let mut b = a * s;
    if let Containment::NotContained(w) = ctx.power_containment(&sym, big_a, b)? {
        return Err(Error::Consistency(format!(
            "I^({big_a}) is not in I^{b}: witness {}",
            w.monomial
        )));
    }
    let witness = loop {
        match ctx.power_containment(&sym, big_a, b + 1)? {
            Containment::Contained => b += 1,
            Containment::NotContained(w) => break w,
        }
    };
    let big_b = b;
    let hat_upper = ratio(u64::from(big_a), u64::from(big_b));
    let r_bound = u64::from(big_b) * ceil_u64(&(int(i64::from(big_a)) / (int(i64::from(big_b)) * epsilon)));
    let floor_ratio = &hat_upper + epsilon;
    let n_q = int(i64::from(big_n));
    let residual_window: Vec<(u32, u32)> = par::map_range(r_bound.saturating_sub(1) as usize, |i| {
        let r = i as u64 + 1;
        let lo = ceil_u64(&(&floor_ratio * int(r as i64)));
        (lo..u64::from(big_n) * r)
            .filter(|&m| ratio(m, r) < n_q)
            .map(|m| (m as u32, r as u32))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();
    Ok(DenkertEstimate {
        a,
        s,
        big_a,
        big_b,
        epsilon: epsilon.clone(),
        rho_lower: ratio(u64::from(big_a), u64::from(big_b) + 1),
        rho_upper_if_window_clear: &hat_upper + epsilon,
        rho_hat_upper: hat_upper,
        accuracy: ratio(u64::from(big_n), u64::from(a * s) + 1) + epsilon,
        witness,
        residual_window_size: residual_window.len(),
        residual_window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fatpoints::tests::{three_points_scheme, vertices_n2};
    use crate::rational::frac;

    #[test]
    fn three_points_estimates_tighten() {
        let z = three_points_scheme();
        let e1 = denkert_estimate(&z, 2, 1, &frac(1, 12), 3).unwrap();
        assert_eq!((e1.big_a, e1.big_b), (4, 3));
        assert_eq!(e1.rho_lower, int(1));
        assert_eq!(e1.rho_hat_upper, frac(4, 3));
        let e2 = denkert_estimate(&z, 2, 2, &frac(1, 12), 3).unwrap();
        assert_eq!((e2.big_a, e2.big_b), (8, 6));
        assert_eq!(e2.rho_lower, frac(8, 7));
        assert_eq!(e2.rho_hat_upper, frac(4, 3));
        assert!(e2.witness.verify(&z, &z.ideal().unwrap()).unwrap());
        assert!(e2.residual_window.iter().all(|&(m, r)| {
            let q = frac(m as i64, r as i64);
            q >= frac(4, 3) + frac(1, 12) && q < int(2)
        }));
    }

    #[test]
    fn precondition_is_enforced() {
        let z = three_points_scheme();
        assert!(matches!(denkert_estimate(&z, 1, 1, &frac(1, 12), 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn vertices_collapse_to_one() {
        let e = denkert_estimate(&vertices_n2(), 1, 1, &frac(1, 4), 3).unwrap();
        assert_eq!((e.big_a, e.big_b), (2, 2));
        assert_eq!(e.rho_hat_upper, int(1));
    }
}
