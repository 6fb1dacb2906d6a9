//! Asymptotic resurgence from facet valuations, with two-sided certification.

use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::containment::{Containment, SchemeContext};
use super::witness::{ContainmentWitness, Flavor};
use super::Limits;
use crate::error::{Error, Result};
use crate::fatpoints::MonomialFatScheme;
use crate::monomial::ExponentVector;
use crate::newton::FacetValuation;
use crate::par;
use crate::rational::{denominator_lcm, floor_u64, int, ratio, to_pq, Rational};

/// Number of scaled witnesses generated along the optimal ray.
const WITNESS_STEPS: u32 = 4;

#[derive(Clone, Debug)]
pub struct RhoHat {
    pub value: Rational,
    /// Facet attaining the maximum of `v(I) / v̂(I)`.
    pub facet: FacetValuation,
    pub valuation_hat: Rational,
    /// Lexicographically least optimal point of the symbolic polyhedron.
    pub optimal_point: Vec<Rational>,
    /// Symbolic-not-in-closure witnesses with ratios approaching `value`.
    pub witnesses: Vec<ContainmentWitness>,
    pub witness_direction: bool,
    /// Every `I^(m) ⊆ closure(I^r)` with `m/r > value`, `m, r <= grid_cap`.
    pub ceiling_direction: bool,
    pub ceiling_violation: Option<ContainmentWitness>,
    pub grid_cap: u32,
}

impl RhoHat {
    pub fn certified(&self) -> bool {
        self.witness_direction && self.ceiling_direction
    }
}

impl Serialize for RhoHat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RhoHat", 2)?;
        st.serialize_field("value", &to_pq(&self.value))?;
        st.serialize_field("certified", &self.certified())?;
        st.end()
    }
}

/// `ρ̂(I(Z)) = max_v v(I) / v̂(I)` over facet valuations of `NP(I(Z))`.
pub fn rho_hat(z: &MonomialFatScheme, grid_cap: u32) -> Result<RhoHat> {
    rho_hat_in(&SchemeContext::new(z, Limits::default())?, grid_cap)
}

pub(crate) fn rho_hat_in(ctx: &SchemeContext<'_>, grid_cap: u32) -> Result<RhoHat> {
    let z = ctx.scheme;
    let mut best: Option<(Rational, FacetValuation, Rational, Vec<Rational>)> = None;
    for f in ctx.np.facets() {
        let (vhat, point) = z.valuation_hat_point(f);
        if vhat.is_zero() {
            return Err(Error::Consistency(format!(
                "facet {:?} has v(I) = {} but vanishes on the symbolic polyhedron",
                f.normal, f.value
            )));
        }
        let q = int(f.value as i64) / &vhat;
        if best.as_ref().is_none_or(|(b, ..)| q > *b) {
            best = Some((q, f.clone(), vhat, point));
        }
    }
    let (value, facet, vhat, point) = best.ok_or(Error::Undefined("asymptotic resurgence of the unit ideal"))?;

    // Witness direction: x = kD·a* lies in I^(kD) and has <c, x> = kD·v̂,
    // so it leaves closure(I^r) for r = floor(kD v̂ / v) + 1.
    let d = denominator_lcm(&point);
    let mut witnesses = Vec::new();
    let mut witness_direction = true;
    for k in 1..=WITNESS_STEPS {
        let scale = &d * k;
        let m = scale.to_u32().ok_or(Error::Overflow)?;
        let entries: Vec<u32> = point
            .iter()
            .map(|x| (x * Rational::from_integer(scale.clone())).to_integer().to_u32())
            .collect::<Option<_>>()
            .ok_or(Error::Overflow)?;
        let monomial = ExponentVector::new(entries);
        let scaled_hat = &vhat * int(i64::from(m));
        let r = u32::try_from(floor_u64(&(scaled_hat / int(facet.value as i64))) + 1).map_err(|_| Error::Overflow)?;
        let w = ContainmentWitness {
            m,
            r,
            monomial,
            flavor: Flavor::SymbolicNotInClosure,
        };
        // Independent re-check through the LP route; the gap to the value
        // must shrink like 1/m.
        let ok = w.verify(z, &ctx.ideal)?
            && w.ratio() < value
            && &value - w.ratio() <= &value * int(facet.value as i64) / (int(i64::from(m)) * &vhat + int(facet.value as i64));
        witness_direction &= ok;
        witnesses.push(w);
    }

    let pairs: Vec<(u32, u32)> = (1..=grid_cap)
        .flat_map(|r| (1..=grid_cap).map(move |m| (m, r)))
        .filter(|&(m, r)| ratio(u64::from(m), u64::from(r)) > value)
        .collect();
    let outcomes = par::map(&pairs, |&(m, r)| ctx.symbolic_in_closure(m, r));
    let mut ceiling_violation = None;
    for o in outcomes {
        if let Containment::NotContained(w) = o? {
            ceiling_violation = Some(w);
            break;
        }
    }

    Ok(RhoHat {
        value,
        facet,
        valuation_hat: vhat,
        optimal_point: point,
        witnesses,
        witness_direction,
        ceiling_direction: ceiling_violation.is_none(),
        ceiling_violation,
        grid_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fatpoints::tests::{three_points_scheme, vertices_n2};
    use crate::rational::frac;

    #[test]
    fn three_points_is_four_thirds_and_certified() {
        let rh = rho_hat(&three_points_scheme(), 8).unwrap();
        assert_eq!(rh.value, frac(4, 3));
        assert!(rh.certified());
        assert_eq!(rh.facet.normal, vec![1, 1, 1]);
        let ratios: Vec<Rational> = rh.witnesses.iter().map(ContainmentWitness::ratio).collect();
        // x = (k,k,k) in I^(2k), just outside closure(I^r) for r = floor(3k/2) + 1.
        assert_eq!(ratios, vec![int(1), int(1), frac(6, 5), frac(8, 7)]);
    }

    #[test]
    fn vertices_and_single_point_are_one() {
        assert_eq!(rho_hat(&vertices_n2(), 8).unwrap().value, int(1));
        assert!(rho_hat(&vertices_n2(), 8).unwrap().certified());
        let point = MonomialFatScheme::coordinate_points(3, &[(0, 1)]).unwrap();
        let rh = rho_hat(&point, 6).unwrap();
        assert_eq!(rh.value, int(1));
        assert!(rh.certified());
    }

    #[test]
    fn star_configuration_in_p3() {
        let z = MonomialFatScheme::coordinate_points(3, &[(0, 1), (1, 1), (2, 1), (3, 1)]).unwrap();
        let rh = rho_hat(&z, 6).unwrap();
        assert_eq!(rh.value, frac(3, 2));
        assert!(rh.certified());
    }
}
