//! Newton polyhedra, integral closure and normality of monomial ideals.
//!
//! A monomial lies in the integral closure of `I^t` iff its exponent lies in
//! `t·NP(I)`, where `NP(I)` is the convex hull of the generator exponents
//! plus the nonnegative orthant. Membership is decided either from the facet
//! inequalities or by an exact LP; the two routes are cross-checked in tests.

mod closure;
mod facets;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation};
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::rational::{int, Rational};

pub use closure::{
    briancon_skoda_check, closure_of_power, closure_of_power_materialized, closure_with,
    integral_closure, is_normal, is_normal_up_to, MembershipRoute, NormalityCheck,
    DEFAULT_BOX_CAP,
};
pub use facets::{facet_valuations, FACET_DIM_CAP};

/// Monomial valuation `a ↦ <normal, a>` from a facet of `NP(I)`, with its
/// value on `I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FacetValuation {
    pub normal: Vec<u64>,
    pub value: u64,
}

impl FacetValuation {
    pub fn eval(&self, a: &ExponentVector) -> u64 {
        a.weighted_degree(&self.normal)
    }

    pub fn normal_rational(&self) -> Vec<Rational> {
        self.normal.iter().map(|&c| int(c as i64)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    nvars: usize,
    vertices: Vec<ExponentVector>,
    facets: Vec<FacetValuation>,
}

impl NewtonPolyhedron {
    pub fn new(ideal: &MonomialIdeal) -> Result<Self> {
        let facets = facet_valuations(ideal)?;
        Ok(NewtonPolyhedron {
            nvars: ideal.nvars(),
            vertices: ideal.generators().to_vec(),
            facets,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Generator exponents; a superset of the true vertices.
    pub fn vertex_candidates(&self) -> &[ExponentVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[FacetValuation] {
        &self.facets
    }

    /// `a ∈ NP(I)`, from the facet inequalities.
    pub fn contains(&self, a: &ExponentVector) -> bool {
        self.contains_scaled(a, 1)
    }

    /// `a ∈ t·NP(I) = NP(I^t)`, from the facet inequalities.
    pub fn contains_scaled(&self, a: &ExponentVector, t: u64) -> bool {
        self.facets.iter().all(|f| f.eval(a) >= t * f.value)
    }

    /// `a ∈ t·NP(I)` by exact LP feasibility: `Σ λ_g g <= a`, `Σ λ_g = t`.
    pub fn contains_scaled_lp(&self, a: &ExponentVector, t: u64) -> bool {
        lp_membership(&self.vertices, a, t)
    }
}

fn lp_membership(gens: &[ExponentVector], a: &ExponentVector, t: u64) -> bool {
    let k = gens.len();
    let mut lp = LinearProgram::feasibility(k);
    for j in 0..a.len() {
        let row = gens.iter().map(|g| int(i64::from(g.entries()[j]))).collect();
        lp.add(row, Relation::Le, int(i64::from(a.entries()[j])));
    }
    lp.add(vec![int(1); k], Relation::Eq, int(t as i64));
    lp.minimize().is_feasible()
}

/// `a ∈ NP(I)`, decided by exact LP feasibility.
pub fn np_contains(ideal: &MonomialIdeal, a: &ExponentVector) -> Result<bool> {
    a.check_len(ideal.nvars())?;
    if ideal.is_zero() {
        return Err(Error::Undefined("Newton polyhedron of the zero ideal"));
    }
    Ok(lp_membership(ideal.generators(), a, 1))
}

/// Smallest facet slack `<c, a> - t·v(I)`; nonnegative iff `a ∈ t·NP(I)`.
pub fn facet_slack(facets: &[FacetValuation], a: &ExponentVector, t: u64) -> Option<i128> {
    facets
        .iter()
        .map(|f| i128::from(f.eval(a)) - i128::from(t * f.value))
        .min()
}

/// `<c, x>` for a rational point.
pub fn eval_rational(normal: &[u64], x: &[Rational]) -> Rational {
    normal
        .iter()
        .zip(x)
        .filter(|(c, _)| **c != 0)
        .map(|(c, xi)| xi * int(*c as i64))
        .fold(Rational::zero(), |acc, v| acc + v)
}
