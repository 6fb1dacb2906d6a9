//! Exponent vectors and monomial ideals.
//!
//! A monomial `x0^a0 * ... * xN^aN` is stored as its exponent vector. Ideals
//! keep their minimal generators sorted in graded-lex order, so two equal
//! ideals always have byte-identical generator lists.

mod ops;
mod search;
mod text;

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use ops::DEFAULT_POWER_GENERATOR_CAP;
pub use search::{ideal_in_power, in_power, PowerMembership, Verdict};
pub use text::{format_ideal, parse_ideal, parse_monomial};

/// Exponents of one monomial; the length is the number of ambient variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    /// The variable `x_i` in `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut v = vec![0; nvars];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// Componentwise `self <= other`, i.e. this monomial divides `other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &ExponentVector) -> Result<ExponentVector> {
        self.check_len(other.len())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(ExponentVector)
    }

    /// `self - other`, or `None` if `other` does not divide `self`.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    pub fn checked_scale(&self, k: u32) -> Result<ExponentVector> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(ExponentVector)
    }

    /// Componentwise maximum (exponent vector of the lcm).
    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// `<w, self>` for a nonnegative integer weight.
    pub fn weighted_degree(&self, w: &[u64]) -> u64 {
        self.0.iter().zip(w).map(|(a, b)| u64::from(*a) * b).sum()
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected,
                got: self.len(),
            })
        }
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl<const K: usize> From<[u32; K]> for ExponentVector {
    fn from(v: [u32; K]) -> Self {
        ExponentVector(v.to_vec())
    }
}

/// Graded lexicographic: total degree first, then the first differing
/// exponent (larger exponent of an earlier variable is larger).
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Monomial syntax, e.g. `x0^2*x1*x3`; the zero vector prints as `1`.
impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A monomial ideal given by its minimal generators.
///
/// The zero ideal has no generators; the unit ideal has the single zero
/// vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Minimalize `gens` into the ideal they generate.
    pub fn from_generators(nvars: usize, gens: Vec<ExponentVector>) -> Result<Self> {
        for g in &gens {
            g.check_len(nvars)?;
        }
        Ok(MonomialIdeal {
            nvars,
            gens: ops::minimal_antichain(gens),
        })
    }

    /// Caller guarantees `gens` is already a sorted antichain.
    pub(crate) fn from_minimal_unchecked(nvars: usize, gens: Vec<ExponentVector>) -> Self {
        debug_assert!(gens.windows(2).all(|w| w[0] < w[1]));
        MonomialIdeal { nvars, gens }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![ExponentVector::zero(nvars)],
        }
    }

    /// The irrelevant ideal `(x_0, ..., x_N)`.
    pub fn irrelevant(nvars: usize) -> Self {
        Self::generated_by_variables(nvars, 0..nvars)
    }

    /// The monomial prime `(x_j : j in vars)`.
    pub fn generated_by_variables(nvars: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let gens = vars
            .into_iter()
            .map(|i| ExponentVector::var(nvars, i))
            .collect();
        MonomialIdeal {
            nvars,
            gens: ops::minimal_antichain(gens),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].degree() == 0
    }

    /// Least generator degree.
    pub fn alpha(&self) -> Result<u64> {
        self.gens
            .first()
            .map(ExponentVector::degree)
            .ok_or(Error::Undefined("alpha of the zero ideal"))
    }

    /// Largest exponent of each variable among the generators.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.nvars];
        for g in &self.gens {
            for (o, e) in out.iter_mut().zip(g.entries()) {
                *o = (*o).max(*e);
            }
        }
        out
    }

    pub fn contains_monomial(&self, m: &ExponentVector) -> Result<bool> {
        m.check_len(self.nvars)?;
        Ok(self.gens.iter().any(|g| g.divides(m)))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_same(other)?;
        Ok(other.gens.iter().all(|m| self.gens.iter().any(|g| g.divides(m))))
    }

    pub(crate) fn check_same(&self, other: &MonomialIdeal) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.nvars,
                got: other.nvars,
            })
        }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}
