use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::fatpoints::MonomialFatScheme;
use crate::monomial::{in_power, ExponentVector, MonomialIdeal};
use crate::newton::NewtonPolyhedron;
use crate::rational::{ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// `x^a ∈ I^(m)` but `x^a ∉ I^r`.
    SymbolicNotInPower,
    /// `x^a ∈ closure(I^m)` but `x^a ∉ I^r`.
    ClosureNotInPower,
    /// `x^a ∈ I^(m)` but `x^a ∉ closure(I^r)`.
    SymbolicNotInClosure,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::SymbolicNotInPower => "symbolic-not-in-power",
            Flavor::ClosureNotInPower => "closure-not-in-power",
            Flavor::SymbolicNotInClosure => "symbolic-not-in-closure",
        }
    }
}

impl Serialize for Flavor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A monomial certifying a non-containment at `(m, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentWitness {
    pub m: u32,
    pub r: u32,
    pub monomial: ExponentVector,
    pub flavor: Flavor,
}

impl ContainmentWitness {
    pub fn ratio(&self) -> Rational {
        ratio(u64::from(self.m), u64::from(self.r))
    }

    /// Order used to pick among witnesses: larger ratio first, then smaller
    /// `r`, then the graded-lex smaller monomial.
    pub fn preferred_over(&self, other: &ContainmentWitness) -> bool {
        let (a, b) = (self.ratio(), other.ratio());
        a > b || (a == b && (self.r, &self.monomial) < (other.r, &other.monomial))
    }

    /// Re-check against a scheme: source membership holds, target fails.
    pub fn verify(&self, z: &MonomialFatScheme, ideal: &MonomialIdeal) -> Result<bool> {
        let np = NewtonPolyhedron::new(ideal)?;
        let (m, r) = (u64::from(self.m), u64::from(self.r));
        Ok(match self.flavor {
            Flavor::SymbolicNotInPower => {
                z.contains(&self.monomial, self.m)? && !in_power(&self.monomial, ideal, self.r, 0)?
            }
            Flavor::SymbolicNotInClosure => {
                z.contains(&self.monomial, self.m)? && !np.contains_scaled_lp(&self.monomial, r)
            }
            Flavor::ClosureNotInPower => {
                np.contains_scaled_lp(&self.monomial, m) && !in_power(&self.monomial, ideal, self.r, 0)?
            }
        })
    }

    /// Re-check a closure-versus-power witness for a bare ideal.
    pub fn verify_ideal(&self, ideal: &MonomialIdeal) -> Result<bool> {
        if self.flavor != Flavor::ClosureNotInPower {
            return Ok(false);
        }
        let np = NewtonPolyhedron::new(ideal)?;
        Ok(np.contains_scaled_lp(&self.monomial, u64::from(self.m))
            && !in_power(&self.monomial, ideal, self.r, 0)?)
    }
}

/// The preferred witness of a list.
pub(crate) fn best(ws: &[ContainmentWitness]) -> Option<&ContainmentWitness> {
    ws.iter().fold(None, |acc: Option<&ContainmentWitness>, w| match acc {
        Some(b) if !w.preferred_over(b) => Some(b),
        _ => Some(w),
    })
}

impl Serialize for ContainmentWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ContainmentWitness", 4)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("monomial", &self.monomial)?;
        st.serialize_field("flavor", &self.flavor)?;
        st.end()
    }
}
