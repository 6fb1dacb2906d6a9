//! Integral closure by lattice-point enumeration in a bounding box.
//!
//! If `a ∈ t·NP(I)` and `a_i > t·M_i` (with `M_i` the largest exponent of
//! `x_i` among generators) then `a - e_i` is still in `t·NP(I)`, so every
//! minimal generator of the closure lies in `Π [0, t·M_i]`.

use serde::Serialize;

use super::NewtonPolyhedron;
use crate::error::{Error, Result};
use crate::monomial::{ideal_in_power, ExponentVector, MonomialIdeal};
use crate::par;

pub const DEFAULT_BOX_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MembershipRoute {
    #[default]
    Facets,
    Lp,
}

/// Minimal generators of `closure(I^t)`.
pub fn closure_with(
    ideal: &MonomialIdeal,
    t: u32,
    route: MembershipRoute,
    box_cap: u128,
) -> Result<MonomialIdeal> {
    if ideal.is_zero() {
        return Err(Error::Undefined("integral closure of the zero ideal"));
    }
    let n = ideal.nvars();
    let bounds: Vec<u32> = ideal
        .max_exponents()
        .iter()
        .map(|&m| m.checked_mul(t).ok_or(Error::Overflow))
        .collect::<Result<_>>()?;
    let volume = bounds
        .iter()
        .try_fold(1u128, |acc, &b| acc.checked_mul(u128::from(b) + 1))
        .unwrap_or(u128::MAX);
    if volume > box_cap {
        return Err(Error::resource("closure box points", volume, box_cap));
    }
    let np = NewtonPolyhedron::new(ideal)?;
    let t64 = u64::from(t);
    let inside = |a: &ExponentVector| match route {
        MembershipRoute::Facets => np.contains_scaled(a, t64),
        MembershipRoute::Lp => np.contains_scaled_lp(a, t64),
    };
    let minimal = |a: &mut Vec<u32>| -> bool {
        let v = ExponentVector::new(a.clone());
        if !inside(&v) {
            return false;
        }
        for j in 0..n {
            if a[j] > 0 {
                a[j] -= 1;
                let below = inside(&ExponentVector::new(a.clone()));
                a[j] += 1;
                if below {
                    return false;
                }
            }
        }
        true
    };
    let slabs: Vec<Vec<ExponentVector>> = par::map_range(bounds[0] as usize + 1, |x0| {
        let mut found = Vec::new();
        let mut a = vec![0u32; n];
        a[0] = x0 as u32;
        loop {
            if minimal(&mut a) {
                found.push(ExponentVector::new(a.clone()));
            }
            // Odometer over coordinates 1..n.
            let mut j = n;
            loop {
                j -= 1;
                if j == 0 {
                    return found;
                }
                if a[j] < bounds[j] {
                    a[j] += 1;
                    break;
                }
                a[j] = 0;
            }
        }
    });
    // Box-minimal points of an up-closed set already form an antichain.
    let mut gens: Vec<ExponentVector> = slabs.into_iter().flatten().collect();
    gens.sort_unstable();
    Ok(MonomialIdeal::from_minimal_unchecked(n, gens))
}

pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    closure_with(ideal, 1, MembershipRoute::Facets, DEFAULT_BOX_CAP)
}

/// `closure(I^t)` through the scaled polyhedron `t·NP(I)`, never forming `I^t`.
pub fn closure_of_power(ideal: &MonomialIdeal, t: u32) -> Result<MonomialIdeal> {
    closure_with(ideal, t, MembershipRoute::Facets, DEFAULT_BOX_CAP)
}

/// `closure(I^t)` by materializing `I^t` first.
pub fn closure_of_power_materialized(ideal: &MonomialIdeal, t: u32) -> Result<MonomialIdeal> {
    integral_closure(&ideal.power(t)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalityCheck {
    pub checked_up_to: u32,
    pub first_failure: Option<u32>,
}

impl NormalityCheck {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Whether `I^t` is integrally closed for `t = 1..=t_max`.
pub fn is_normal_up_to(ideal: &MonomialIdeal, t_max: u32) -> Result<NormalityCheck> {
    for t in 1..=t_max {
        if closure_of_power(ideal, t)? != ideal.power(t)? {
            return Ok(NormalityCheck {
                checked_up_to: t_max,
                first_failure: Some(t),
            });
        }
    }
    Ok(NormalityCheck {
        checked_up_to: t_max,
        first_failure: None,
    })
}

/// Normality of a monomial ideal in `n` variables: it suffices that `I^t`
/// is integrally closed for `t < n`.
pub fn is_normal(ideal: &MonomialIdeal) -> Result<bool> {
    let t_max = ideal.nvars().saturating_sub(1).max(1) as u32;
    Ok(is_normal_up_to(ideal, t_max)?.holds())
}

/// `closure(I^(t+N)) ⊆ I^t` with `N + 1` the number of variables.
pub fn briancon_skoda_check(ideal: &MonomialIdeal, t: u32) -> Result<bool> {
    let big_n = ideal.nvars() as u32 - 1;
    let closure = closure_of_power(ideal, t + big_n)?;
    Ok(ideal_in_power(&closure, ideal, t, 0)?.is_contained())
}
