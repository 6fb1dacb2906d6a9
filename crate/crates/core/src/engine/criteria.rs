//! The chain of criteria for a fat point ideal:
//! (a) `I^m = I^(m)` ⇒ (b) `ρ = 1` ⇒ (c) `ρ̂ = 1` ⇒ (d) `closure(I^m) = I^(m)`
//! ⇒ (e) analytic spread `N`. (e) is never computed; it is reported as a
//! consequence of (d).

use serde::{Serialize, Serializer};

use super::bracket::Bracket;
use super::containment::SchemeContext;
use super::rho_hat::{rho_hat_in, RhoHat};
use super::rho_int::rho_int_with;
use super::witness::{ContainmentWitness, Flavor};
use super::Limits;
use crate::error::Result;
use crate::fatpoints::MonomialFatScheme;
use crate::newton::{closure_with, MembershipRoute};
use crate::rational::int;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriState {
    True,
    False,
    Undetermined,
}

impl TriState {
    fn definite(self) -> Option<bool> {
        match self {
            TriState::True => Some(true),
            TriState::False => Some(false),
            TriState::Undetermined => None,
        }
    }
}

impl From<bool> for TriState {
    fn from(b: bool) -> Self {
        if b {
            TriState::True
        } else {
            TriState::False
        }
    }
}

impl Serialize for TriState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.definite() {
            Some(b) => s.serialize_bool(b),
            None => s.serialize_str("undetermined"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Mt3Report {
    pub m_max: u32,
    /// `I^m = I^(m)` for every `m <= m_max`.
    pub a_sdefect_zero: bool,
    pub a_first_failure: Option<u32>,
    pub b_rho_one: TriState,
    pub c_rho_hat_one: bool,
    /// `closure(I^m) = I^(m)` for every `m <= m_max`.
    pub d_closure_is_symbolic: bool,
    pub d_first_failure: Option<u32>,
    pub e_analytic_spread: &'static str,
    /// Pairs `(x, y)` with `x` true and its consequence `y` false.
    pub inversions: Vec<String>,
}

impl Mt3Report {
    pub fn chain_holds(&self) -> bool {
        self.inversions.is_empty()
    }
}

/// Evaluate the criteria from scratch.
pub fn mt3_criteria(z: &MonomialFatScheme, m_max: u32) -> Result<Mt3Report> {
    let ctx = SchemeContext::new(z, Limits::default())?;
    let rh = rho_hat_in(&ctx, 8)?;
    let rho_int = rho_int_with(&ctx.ideal, 12, ctx.limits)?.value;
    mt3_from_parts(&ctx, m_max, &rh, Some(&rho_int), &[])
}

pub(crate) fn mt3_from_parts(
    ctx: &SchemeContext<'_>,
    m_max: u32,
    rh: &RhoHat,
    rho_int: Option<&Bracket>,
    witnesses: &[ContainmentWitness],
) -> Result<Mt3Report> {
    let one = int(1);
    let mut a_first_failure = None;
    let mut d_first_failure = None;
    let mut power = ctx.ideal.clone();
    for m in 1..=m_max {
        if m > 1 {
            power = power.multiply_capped(&ctx.ideal, ctx.limits.power_cap)?;
        }
        let sym = ctx.symbolic_power(m)?;
        if a_first_failure.is_none() && power != sym {
            a_first_failure = Some(m);
        }
        if d_first_failure.is_none() {
            let closure = closure_with(&ctx.ideal, m, MembershipRoute::Facets, ctx.limits.box_cap)?;
            if closure != sym {
                d_first_failure = Some(m);
            }
        }
    }
    let c = rh.certified() && rh.value == one;
    let known_above_one = witnesses
        .iter()
        .any(|w| w.flavor == Flavor::SymbolicNotInPower && w.ratio() > one);
    // ρ = 1 iff ρ̂ = 1 and ρ_int = 1.
    let b = if rh.value > one || known_above_one {
        TriState::False
    } else if let (true, Some(v)) = (c, rho_int.and_then(Bracket::exact_value)) {
        (*v == one).into()
    } else {
        TriState::Undetermined
    };
    let d = d_first_failure.is_none();
    let chain = [
        ("(a)", TriState::from(a_first_failure.is_none())),
        ("(b)", b),
        ("(c)", TriState::from(c)),
        ("(d)", TriState::from(d)),
    ];
    let mut inversions = Vec::new();
    for i in 0..chain.len() {
        for j in i + 1..chain.len() {
            if chain[i].1 == TriState::True && chain[j].1 == TriState::False {
                inversions.push(format!("{} holds but {} fails", chain[i].0, chain[j].0));
            }
        }
    }
    Ok(Mt3Report {
        m_max,
        a_sdefect_zero: a_first_failure.is_none(),
        a_first_failure,
        b_rho_one: b,
        c_rho_hat_one: c,
        d_closure_is_symbolic: d,
        d_first_failure,
        e_analytic_spread: if d { "implied by (d)" } else { "not implied" },
        inversions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fatpoints::tests::{three_points_scheme, vertices_n2};

    #[test]
    fn vertices_satisfy_every_criterion() {
        let r = mt3_criteria(&vertices_n2(), 4).unwrap();
        assert!(r.a_sdefect_zero && r.c_rho_hat_one && r.d_closure_is_symbolic);
        assert_eq!(r.b_rho_one, TriState::True);
        assert!(r.chain_holds());
    }

    #[test]
    fn three_points_fail_every_criterion() {
        let r = mt3_criteria(&three_points_scheme(), 4).unwrap();
        assert_eq!(r.a_first_failure, Some(2));
        assert_eq!(r.b_rho_one, TriState::False);
        assert!(!r.c_rho_hat_one && !r.d_closure_is_symbolic);
        assert!(r.chain_holds());
    }

    #[test]
    fn single_point_satisfies_every_criterion() {
        let z = MonomialFatScheme::coordinate_points(3, &[(2, 1)]).unwrap();
        let r = mt3_criteria(&z, 4).unwrap();
        assert!(r.a_sdefect_zero && r.c_rho_hat_one && r.d_closure_is_symbolic);
        assert_eq!(r.b_rho_one, TriState::True);
    }
}
