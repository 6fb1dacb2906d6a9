//! Fat point schemes supported on coordinate subspaces.
//!
//! A component is a prime `P = (x_j : j ∈ S)` with a multiplicity `μ`; the
//! `m`-th symbolic power of the scheme is `∩ P_i^(m μ_i)`, and a monomial
//! `x^a` lies in it iff `Σ_{j ∈ S_i} a_j >= m μ_i` for every component.

mod symbolic;
mod text;
mod waldschmidt;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{ExponentVector, MonomialIdeal};

pub use symbolic::DEFAULT_SYMBOLIC_GENERATOR_CAP;
pub use text::{format_scheme, parse_scheme};

/// The prime `(x_j : j ∈ vars)`; `vars` is sorted, nonempty and proper.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoordinatePrime {
    vars: Vec<usize>,
}

impl CoordinatePrime {
    pub fn new(nvars: usize, mut vars: Vec<usize>) -> Result<Self> {
        vars.sort_unstable();
        vars.dedup();
        if vars.is_empty() || vars.len() >= nvars {
            return Err(Error::InvalidScheme(format!(
                "prime on variables {vars:?} is not a nonempty proper subset of {nvars} variables"
            )));
        }
        if let Some(&j) = vars.iter().find(|&&j| j >= nvars) {
            return Err(Error::InvalidScheme(format!("variable x{j} out of range")));
        }
        Ok(CoordinatePrime { vars })
    }

    /// Ideal of the coordinate point with only `x_j` nonzero.
    pub fn point(nvars: usize, j: usize) -> Result<Self> {
        Self::new(nvars, (0..nvars).filter(|&i| i != j).collect())
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn height(&self) -> usize {
        self.vars.len()
    }

    /// `Σ_{j ∈ S} a_j`.
    pub fn order(&self, a: &[u32]) -> u64 {
        self.vars.iter().map(|&j| u64::from(a[j])).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub prime: CoordinatePrime,
    pub mult: u32,
}

/// `Z = μ_1 p_1 + ... + μ_s p_s` in `P^N` with coordinate-subspace supports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialFatScheme {
    ambient: usize,
    components: Vec<Component>,
}

impl MonomialFatScheme {
    /// `components` pairs variable subsets with multiplicities.
    pub fn new(ambient: usize, components: Vec<(Vec<usize>, u32)>) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::InvalidScheme("ambient dimension must be positive".into()));
        }
        if components.is_empty() {
            return Err(Error::InvalidScheme("scheme has no components".into()));
        }
        let nvars = ambient + 1;
        let mut out: Vec<Component> = Vec::with_capacity(components.len());
        for (vars, mult) in components {
            if mult == 0 {
                return Err(Error::InvalidScheme("multiplicity must be at least 1".into()));
            }
            let prime = CoordinatePrime::new(nvars, vars)?;
            if out.iter().any(|c| c.prime == prime) {
                return Err(Error::InvalidScheme(format!("repeated prime {:?}", prime.vars)));
            }
            out.push(Component { prime, mult });
        }
        Ok(MonomialFatScheme {
            ambient,
            components: out,
        })
    }

    /// Coordinate points `(j, μ_j)` of `P^N`, `p_j` having only `x_j` nonzero.
    pub fn coordinate_points(ambient: usize, points: &[(usize, u32)]) -> Result<Self> {
        let comps = points
            .iter()
            .map(|&(j, mult)| {
                CoordinatePrime::point(ambient + 1, j).map(|p| (p.vars, mult))
            })
            .collect::<Result<_>>()?;
        Self::new(ambient, comps)
    }

    /// `N`, the dimension of the projective space.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn nvars(&self) -> usize {
        self.ambient + 1
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Largest height of a component.
    pub fn big_height(&self) -> usize {
        self.components.iter().map(|c| c.prime.height()).max().unwrap_or(0)
    }

    pub fn is_reduced(&self) -> bool {
        self.components.iter().all(|c| c.mult == 1)
    }

    /// `x^a ∈ I(mZ)`.
    pub fn contains(&self, a: &ExponentVector, m: u32) -> Result<bool> {
        a.check_len(self.nvars())?;
        Ok(self.contains_unchecked(a.entries(), m))
    }

    pub(crate) fn contains_unchecked(&self, a: &[u32], m: u32) -> bool {
        self.components
            .iter()
            .all(|c| c.prime.order(a) >= u64::from(m) * u64::from(c.mult))
    }

    /// `I(Z)`.
    pub fn ideal(&self) -> Result<MonomialIdeal> {
        self.symbolic_power(1)
    }
}

impl fmt::Display for MonomialFatScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let vars: Vec<String> = c.prime.vars.iter().map(|j| format!("x{j}")).collect();
            write!(f, "{}·({})", c.mult, vars.join(","))?;
        }
        Ok(())
    }
}
