use super::{ExponentVector, MonomialIdeal};
use crate::error::{Error, Result};

/// Default limit on the generator count of a materialized power.
pub const DEFAULT_POWER_GENERATOR_CAP: usize = 250_000;

/// Sort, dedupe and drop every vector divisible by another one.
pub(crate) fn minimal_antichain(mut gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    gens.sort_unstable();
    gens.dedup();
    let mut kept: Vec<ExponentVector> = Vec::with_capacity(gens.len());
    // Divisors of a candidate have degree <= its degree, so they are already in `kept`.
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_unstable();
    kept
}

impl MonomialIdeal {
    pub fn multiply(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.multiply_capped(other, DEFAULT_POWER_GENERATOR_CAP)
    }

    pub fn multiply_capped(&self, other: &MonomialIdeal, cap: usize) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let pairs = self.len() as u128 * other.len() as u128;
        let pair_cap = cap as u128 * 64;
        if pairs > pair_cap {
            return Err(Error::resource("product candidate count", pairs, pair_cap));
        }
        let mut out = Vec::with_capacity(pairs as usize);
        for g in &self.gens {
            for h in &other.gens {
                out.push(g.checked_add(h)?);
            }
        }
        let gens = minimal_antichain(out);
        if gens.len() > cap {
            return Err(Error::resource(
                "power generator count",
                gens.len() as u128,
                cap as u128,
            ));
        }
        Ok(MonomialIdeal::from_minimal_unchecked(self.nvars, gens))
    }

    /// `I^r`. The generator count grows exponentially in `r`; use
    /// [`in_power`](super::in_power) to test membership without materializing.
    pub fn power(&self, r: u32) -> Result<MonomialIdeal> {
        self.power_capped(r, DEFAULT_POWER_GENERATOR_CAP)
    }

    pub fn power_capped(&self, r: u32, cap: usize) -> Result<MonomialIdeal> {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for _ in 0..r {
            acc = acc.multiply_capped(self, cap)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same(other)?;
        let mut out = Vec::with_capacity(self.len() * other.len());
        for g in &self.gens {
            for h in &other.gens {
                out.push(g.lcm(h));
            }
        }
        Ok(MonomialIdeal::from_minimal_unchecked(
            self.nvars,
            minimal_antichain(out),
        ))
    }
}
