//! Symbolic powers: generation, defect, and initial degree.

use super::MonomialFatScheme;
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation};
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::par;
use crate::rational::{floor_u64, int};

/// Default limit on the generator count of a symbolic power.
pub const DEFAULT_SYMBOLIC_GENERATOR_CAP: usize = 2_000_000;

impl MonomialFatScheme {
    /// `I(mZ)`.
    pub fn symbolic_power(&self, m: u32) -> Result<MonomialIdeal> {
        self.symbolic_power_capped(m, DEFAULT_SYMBOLIC_GENERATOR_CAP)
    }

    /// Minimal lattice points of `{a >= 0 : Σ_{j ∈ S_i} a_j >= m μ_i}`.
    ///
    /// Coordinates `0..n-1` range over `[0, m · max μ]`; the last one is set
    /// to the least value meeting every demand, and the point is kept when
    /// each positive coordinate sits in some tight component.
    pub fn symbolic_power_capped(&self, m: u32, cap: usize) -> Result<MonomialIdeal> {
        let n = self.nvars();
        let demand: Vec<u64> = self
            .components
            .iter()
            .map(|c| u64::from(m) * u64::from(c.mult))
            .collect();
        let bound: Vec<u32> = (0..n)
            .map(|j| {
                self.components
                    .iter()
                    .zip(&demand)
                    .filter(|(c, _)| c.prime.vars().contains(&j))
                    .map(|(_, &d)| d)
                    .max()
                    .unwrap_or(0)
            })
            .map(|d| u32::try_from(d).map_err(|_| Error::Overflow))
            .collect::<Result<_>>()?;
        // Components whose largest variable is k < n-1 are checked once k is set.
        let last = n - 1;
        let mut closes_at: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, c) in self.components.iter().enumerate() {
            let k = *c.prime.vars().last().expect("nonempty prime");
            closes_at[k].push(i);
        }
        let ctx = Enumeration {
            scheme: self,
            demand: &demand,
            bound: &bound,
            closes_at: &closes_at,
            last,
        };
        let slabs: Vec<Vec<ExponentVector>> = if last == 0 {
            vec![ctx.leaf(&mut vec![0])]
        } else {
            par::map_range(bound[0] as usize + 1, |a0| {
                let mut a = vec![0u32; n];
                a[0] = a0 as u32;
                let mut out = Vec::new();
                if ctx.closed_ok(&a, 0) {
                    ctx.recurse(&mut a, 1, &mut out);
                }
                out
            })
        };
        let total: usize = slabs.iter().map(Vec::len).sum();
        if total > cap {
            return Err(Error::resource("symbolic power generator count", total as u128, cap as u128));
        }
        let mut gens: Vec<ExponentVector> = slabs.into_iter().flatten().collect();
        gens.sort_unstable();
        Ok(MonomialIdeal::from_minimal_unchecked(n, gens))
    }

    /// `I(mZ)` as the intersection of the powers `P_i^(m μ_i)`.
    pub fn symbolic_power_by_intersection(&self, m: u32) -> Result<MonomialIdeal> {
        let n = self.nvars();
        let mut acc = MonomialIdeal::unit(n);
        for c in &self.components {
            let p = MonomialIdeal::generated_by_variables(n, c.prime.vars().iter().copied());
            acc = acc.intersect(&p.power(m * c.mult)?)?;
        }
        Ok(acc)
    }

    /// `I(Z)^m == I(mZ)`.
    pub fn sdefect_zero(&self, m: u32) -> Result<bool> {
        Ok(self.ideal()?.power(m)? == self.symbolic_power(m)?)
    }

    /// `α(I(mZ))` by integer programming on the symbolic polyhedron.
    pub fn alpha_symbolic(&self, m: u32) -> Result<u64> {
        let lp = self.symbolic_polyhedron(m, vec![int(1); self.nvars()]);
        let value = lp
            .integer_minimize()
            .and_then(|o| o.value().cloned())
            .ok_or(Error::Undefined("initial degree of an empty symbolic power"))?;
        Ok(floor_u64(&value))
    }

    /// `α(I(mZ))` from the materialized generators.
    pub fn alpha_symbolic_materialized(&self, m: u32) -> Result<u64> {
        self.symbolic_power(m)?.alpha()
    }

    /// `minimize <objective, a>` over `{a >= 0 : Σ_{j ∈ S_i} a_j >= m μ_i}`.
    pub(crate) fn symbolic_polyhedron(&self, m: u32, objective: Vec<crate::Rational>) -> LinearProgram {
        let n = self.nvars();
        let mut lp = LinearProgram::new(objective);
        for c in &self.components {
            let mut row = vec![int(0); n];
            for &j in c.prime.vars() {
                row[j] = int(1);
            }
            lp.add(row, Relation::Ge, int(i64::from(m) * i64::from(c.mult)));
        }
        lp
    }
}

struct Enumeration<'a> {
    scheme: &'a MonomialFatScheme,
    demand: &'a [u64],
    bound: &'a [u32],
    closes_at: &'a [Vec<usize>],
    last: usize,
}

impl Enumeration<'_> {
    fn closed_ok(&self, a: &[u32], k: usize) -> bool {
        self.closes_at[k]
            .iter()
            .all(|&i| self.scheme.components[i].prime.order(a) >= self.demand[i])
    }

    fn recurse(&self, a: &mut Vec<u32>, k: usize, out: &mut Vec<ExponentVector>) {
        if k == self.last {
            out.extend(self.leaf(a));
            return;
        }
        for v in 0..=self.bound[k] {
            a[k] = v;
            if self.closed_ok(a, k) {
                self.recurse(a, k + 1, out);
            }
        }
        a[k] = 0;
    }

    fn leaf(&self, a: &mut Vec<u32>) -> Vec<ExponentVector> {
        let comps = &self.scheme.components;
        a[self.last] = 0;
        let need = comps
            .iter()
            .zip(self.demand)
            .filter(|(c, _)| c.prime.vars().contains(&self.last))
            .map(|(c, &d)| d.saturating_sub(c.prime.order(a)))
            .max()
            .unwrap_or(0);
        a[self.last] = need as u32;
        let orders: Vec<u64> = comps.iter().map(|c| c.prime.order(a)).collect();
        let minimal = (0..self.last).all(|j| {
            a[j] == 0
                || comps
                    .iter()
                    .enumerate()
                    .any(|(i, c)| orders[i] == self.demand[i] && c.prime.vars().contains(&j))
        });
        let feasible = orders.iter().zip(self.demand).all(|(o, d)| o >= d);
        let res = if minimal && feasible {
            vec![ExponentVector::new(a.clone())]
        } else {
            Vec::new()
        };
        a[self.last] = 0;
        res
    }
}
