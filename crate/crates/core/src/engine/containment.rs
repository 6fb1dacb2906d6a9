//! Containment oracles `I^(m) ⊆ I^r` and `I^(m) ⊆ closure(I^r)`.

use super::witness::{ContainmentWitness, Flavor};
use super::Limits;
use crate::error::Result;
use crate::fatpoints::MonomialFatScheme;
use crate::monomial::{MonomialIdeal, PowerMembership, Verdict};
use crate::newton::NewtonPolyhedron;
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    Contained,
    NotContained(ContainmentWitness),
}

impl Containment {
    pub fn holds(&self) -> bool {
        matches!(self, Containment::Contained)
    }

    pub fn witness(&self) -> Option<&ContainmentWitness> {
        match self {
            Containment::Contained => None,
            Containment::NotContained(w) => Some(w),
        }
    }

    pub fn into_witness(self) -> Option<ContainmentWitness> {
        match self {
            Containment::Contained => None,
            Containment::NotContained(w) => Some(w),
        }
    }
}

/// A scheme with its ideal, Newton polyhedron and power-membership oracle
/// built once and shared across many queries.
#[derive(Clone, Debug)]
pub struct SchemeContext<'a> {
    pub scheme: &'a MonomialFatScheme,
    pub ideal: MonomialIdeal,
    pub np: NewtonPolyhedron,
    pub oracle: PowerMembership,
    pub limits: Limits,
}

impl<'a> SchemeContext<'a> {
    pub fn new(scheme: &'a MonomialFatScheme, limits: Limits) -> Result<Self> {
        let ideal = scheme.symbolic_power_capped(1, limits.symbolic_cap)?;
        let np = NewtonPolyhedron::new(&ideal)?;
        let oracle = PowerMembership::new(&ideal).with_bounds(np.facets().iter().map(|f| f.normal.clone()));
        Ok(SchemeContext {
            scheme,
            ideal,
            np,
            oracle,
            limits,
        })
    }

    /// `N`.
    pub fn ambient(&self) -> u32 {
        self.scheme.ambient() as u32
    }

    pub fn big_height(&self) -> u32 {
        self.scheme.big_height() as u32
    }

    pub fn symbolic_power(&self, m: u32) -> Result<MonomialIdeal> {
        self.scheme.symbolic_power_capped(m, self.limits.symbolic_cap)
    }

    /// `sym ⊆ I^r` where `sym = I^(m)` was computed by the caller.
    pub fn power_containment(&self, sym: &MonomialIdeal, m: u32, r: u32) -> Result<Containment> {
        Ok(match self.oracle.ideal_contained(sym, r, 0)? {
            Verdict::Contained => Containment::Contained,
            Verdict::Witness(monomial) => Containment::NotContained(ContainmentWitness {
                m,
                r,
                monomial,
                flavor: Flavor::SymbolicNotInPower,
            }),
        })
    }

    /// `sym ⊆ closure(I^r)` where `sym = I^(m)`.
    pub fn closure_containment(&self, sym: &MonomialIdeal, m: u32, r: u32) -> Containment {
        let gens = sym.generators();
        match par::position_first(gens, |g| !self.np.contains_scaled(g, u64::from(r))) {
            None => Containment::Contained,
            Some(i) => Containment::NotContained(ContainmentWitness {
                m,
                r,
                monomial: gens[i].clone(),
                flavor: Flavor::SymbolicNotInClosure,
            }),
        }
    }

    pub fn symbolic_in_power(&self, m: u32, r: u32) -> Result<Containment> {
        self.power_containment(&self.symbolic_power(m)?, m, r)
    }

    pub fn symbolic_in_closure(&self, m: u32, r: u32) -> Result<Containment> {
        Ok(self.closure_containment(&self.symbolic_power(m)?, m, r))
    }
}

/// `I^(m) ⊆ I^r`, with the first failing generator of `I^(m)` on failure.
pub fn symbolic_in_power(z: &MonomialFatScheme, m: u32, r: u32) -> Result<Containment> {
    SchemeContext::new(z, Limits::default())?.symbolic_in_power(m, r)
}

/// `I^(m) ⊆ closure(I^r)`.
pub fn symbolic_in_closure(z: &MonomialFatScheme, m: u32, r: u32) -> Result<Containment> {
    SchemeContext::new(z, Limits::default())?.symbolic_in_closure(m, r)
}
