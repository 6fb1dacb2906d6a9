//! Integral-closure resurgence `ρ_int` and its shifted variant `K`.
//!
//! Briançon-Skoda gives `closure(I^(r+N)) ⊆ I^r`, so any non-containment
//! `closure(I^m) ⊄ I^r` has `m <= r + N - 1`. Once a witness of ratio
//! `c > 1` is known, better ones need `r (c - 1) < N`: a finite region.

use std::collections::BTreeMap;

use serde::Serialize;

use super::bracket::Bracket;
use super::witness::{best, ContainmentWitness, Flavor};
use super::{projective_dim, Limits};
use crate::error::{Error, Result};
use crate::monomial::{MonomialIdeal, PowerMembership, Verdict};
use crate::newton::{closure_with, is_normal, MembershipRoute, NewtonPolyhedron};
use crate::par;
use crate::rational::{int, ratio, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct IntegralSearch {
    pub value: Bracket,
    pub witness: Option<ContainmentWitness>,
    pub normal: bool,
    /// `normal`, `exhaustive` (a witness plus the finite region) or
    /// `probe` (no witness up to `r_probe`).
    pub scope: &'static str,
    pub r_probe: u32,
    pub pairs_checked: u64,
}

/// `ρ_int(I) = sup {m/r : closure(I^m) ⊄ I^r} ∪ {1}`.
pub fn rho_int_search(ideal: &MonomialIdeal, r_probe: u32) -> Result<IntegralSearch> {
    search(ideal, r_probe, 0, Limits::default())
}

/// `K(I) = sup {(m+1)/r : closure(I^m) ⊄ I^r}`.
pub fn k_search(ideal: &MonomialIdeal, r_probe: u32) -> Result<IntegralSearch> {
    search(ideal, r_probe, 1, Limits::default())
}

pub(crate) fn rho_int_with(ideal: &MonomialIdeal, r_probe: u32, limits: Limits) -> Result<IntegralSearch> {
    search(ideal, r_probe, 0, limits)
}

pub(crate) fn k_with(ideal: &MonomialIdeal, r_probe: u32, limits: Limits) -> Result<IntegralSearch> {
    search(ideal, r_probe, 1, limits)
}

struct Searcher<'a> {
    ideal: &'a MonomialIdeal,
    oracle: PowerMembership,
    limits: Limits,
    closures: BTreeMap<u32, MonomialIdeal>,
}

impl Searcher<'_> {
    fn closure(&mut self, m: u32) -> Result<&MonomialIdeal> {
        if !self.closures.contains_key(&m) {
            let c = closure_with(self.ideal, m, MembershipRoute::Facets, self.limits.box_cap)?;
            self.closures.insert(m, c);
        }
        Ok(&self.closures[&m])
    }

    /// Witnesses among `pairs` of `(m, r)`.
    fn run(&mut self, pairs: &[(u32, u32)]) -> Result<Vec<ContainmentWitness>> {
        for &(m, _) in pairs {
            self.closure(m)?;
        }
        let this = &*self;
        let outcomes = par::map(pairs, |&(m, r)| this.oracle.ideal_contained(&this.closures[&m], r, 0));
        let mut out = Vec::new();
        for (&(m, r), o) in pairs.iter().zip(outcomes) {
            if let Verdict::Witness(monomial) = o? {
                out.push(ContainmentWitness {
                    m,
                    r,
                    monomial,
                    flavor: Flavor::ClosureNotInPower,
                });
            }
        }
        Ok(out)
    }
}

fn search(ideal: &MonomialIdeal, r_probe: u32, shift: u32, limits: Limits) -> Result<IntegralSearch> {
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::Precondition("integral resurgence needs a proper nonzero ideal".into()));
    }
    if is_normal(ideal)? {
        return Ok(IntegralSearch {
            value: Bracket::exact(int(1)),
            witness: None,
            normal: true,
            scope: "normal",
            r_probe,
            pairs_checked: 0,
        });
    }
    let big_n = projective_dim(ideal);
    let np = NewtonPolyhedron::new(ideal)?;
    let mut searcher = Searcher {
        ideal,
        oracle: PowerMembership::new(ideal).with_bounds(np.facets().iter().map(|f| f.normal.clone())),
        limits,
        closures: BTreeMap::new(),
    };
    let objective = |w: &ContainmentWitness| ratio(u64::from(w.m + shift), u64::from(w.r));

    // Phase 1: (m + shift)/r > 1 and m <= r + N - 1.
    let phase1: Vec<(u32, u32)> = (1..=r_probe)
        .flat_map(|r| (r + 1 - shift..=r + big_n - 1).map(move |m| (m, r)))
        .collect();
    let mut found = searcher.run(&phase1)?;
    let mut checked = phase1.len() as u64;
    let Some(c) = found.iter().map(&objective).max() else {
        let hi = ratio(u64::from(r_probe + big_n + shift), u64::from(r_probe + 1));
        return Ok(IntegralSearch {
            value: Bracket::closed(int(1), hi.max(int(1))),
            witness: None,
            normal: false,
            scope: "probe",
            r_probe,
            pairs_checked: checked,
        });
    };

    // Phase 2: every pair that could beat c.
    let one = int(1);
    let phase2: Vec<(u32, u32)> = (1u32..)
        .take_while(|&r| int(i64::from(r)) * (&c - &one) < int(i64::from(big_n)))
        .flat_map(|r| (1..=r + big_n - 1).map(move |m| (m, r)))
        .filter(|&(m, r)| ratio(u64::from(m + shift), u64::from(r)) > c)
        .collect();
    checked += phase2.len() as u64;
    found.extend(searcher.run(&phase2)?);

    let top: Rational = found.iter().map(&objective).max().expect("nonempty");
    let witness = best(&found.iter().filter(|w| objective(w) == top).cloned().collect::<Vec<_>>()).cloned();
    Ok(IntegralSearch {
        value: Bracket::exact(top),
        witness,
        normal: false,
        scope: "exhaustive",
        r_probe,
        pairs_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::tests::{ev, ideal, three_points};

    fn cubes() -> MonomialIdeal {
        ideal(3, &[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]])
    }

    #[test]
    fn cubes_reach_n() {
        let s = rho_int_search(&cubes(), 12).unwrap();
        assert_eq!(s.value, Bracket::exact(int(2)));
        let w = s.witness.unwrap();
        assert_eq!((w.m, w.r, w.monomial.clone()), (2, 1, ev(&[2, 2, 2])));
        assert!(w.verify_ideal(&cubes()).unwrap());
        assert_eq!(k_search(&cubes(), 12).unwrap().value, Bracket::exact(int(3)));
    }

    #[test]
    fn normal_ideals_are_one() {
        for i in [three_points(), ideal(3, &[&[2, 1, 0]]), ideal(2, &[&[1, 0], &[0, 1]])] {
            let s = rho_int_search(&i, 12).unwrap();
            assert_eq!(s.value, Bracket::exact(int(1)));
            assert_eq!(s.scope, "normal");
            assert_eq!(k_search(&i, 12).unwrap().value, Bracket::exact(int(1)));
        }
    }

    /// Direct search of the full region m <= r + N - 1, r <= r_max.
    fn brute(i: &MonomialIdeal, shift: u32, r_max: u32) -> Rational {
        let n = projective_dim(i);
        let mut best = if shift == 0 { int(1) } else { int(0) };
        for r in 1..=r_max {
            for m in 1..=r + n - 1 {
                let c = closure_with(i, m, MembershipRoute::Facets, u128::MAX).unwrap();
                let p = i.power(r).unwrap();
                if !p.contains_ideal(&c).unwrap() {
                    best = best.max(ratio(u64::from(m + shift), u64::from(r)));
                }
            }
        }
        best
    }

    #[test]
    fn agrees_with_brute_force_on_non_normal_ideals() {
        let samples = [
            cubes(),
            ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]),
            ideal(3, &[&[3, 0, 0], &[0, 3, 0], &[1, 1, 1]]),
            ideal(2, &[&[3, 0], &[0, 3]]),
        ];
        for i in &samples {
            let s = rho_int_search(i, 6).unwrap();
            let k = k_search(i, 6).unwrap();
            if let Some(v) = s.value.exact_value() {
                assert_eq!(*v, brute(i, 0, 6), "{i}");
            }
            if let Some(v) = k.value.exact_value() {
                assert_eq!(*v, brute(i, 1, 6), "{i}");
            }
        }
    }
}
