//! Membership in powers of a monomial ideal without materializing them.
//!
//! `m ∈ M^k · I^r` iff there are generators `g_1, ..., g_r` of `I` with
//! `g_1 + ... + g_r <= m` and `deg(m) - Σ deg(g_i) >= k`. The search is a
//! depth-first branch and bound over generators, memoized on
//! `(residual, remaining depth)` so permutations of the same multiset are
//! explored once.

use std::collections::HashMap;

use super::{ExponentVector, MonomialIdeal};
use crate::error::{Error, Result};
use crate::par;

/// Outcome of a containment test: either contained, or the first generator
/// (in canonical order) of the source that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
#[must_use]
pub enum Verdict {
    Contained,
    Witness(ExponentVector),
}

impl Verdict {
    pub fn is_contained(&self) -> bool {
        matches!(self, Verdict::Contained)
    }

    pub fn witness(&self) -> Option<&ExponentVector> {
        match self {
            Verdict::Contained => None,
            Verdict::Witness(w) => Some(w),
        }
    }
}

/// Linear upper bound on decomposition depth: every generator `g` has
/// `<weight, g> >= floor`, so a residual `a` supports at most
/// `<weight, a> / floor` more factors.
#[derive(Clone, Debug)]
struct DepthBound {
    weight: Vec<u64>,
    floor: u64,
}

impl DepthBound {
    fn max_factors(&self, a: &[u32]) -> u64 {
        let s: u64 = a.iter().zip(&self.weight).map(|(x, w)| u64::from(*x) * w).sum();
        s / self.floor
    }
}

/// Reusable membership oracle for powers of one ideal.
#[derive(Clone, Debug)]
pub struct PowerMembership {
    nvars: usize,
    gens: Vec<ExponentVector>,
    degrees: Vec<u64>,
    alpha: u64,
    bounds: Vec<DepthBound>,
}

impl PowerMembership {
    pub fn new(ideal: &MonomialIdeal) -> Self {
        let gens = ideal.generators().to_vec();
        let degrees: Vec<u64> = gens.iter().map(ExponentVector::degree).collect();
        let alpha = degrees.first().copied().unwrap_or(0);
        let mut this = PowerMembership {
            nvars: ideal.nvars(),
            gens,
            degrees,
            alpha,
            bounds: Vec::new(),
        };
        this.add_bound(vec![1; ideal.nvars()]);
        for j in 0..ideal.nvars() {
            let mut w = vec![0; ideal.nvars()];
            w[j] = 1;
            this.add_bound(w);
        }
        this
    }

    /// Add pruning weights, e.g. the facet normals of the Newton polyhedron,
    /// which make the pruning bound equal to the LP relaxation.
    pub fn with_bounds(mut self, weights: impl IntoIterator<Item = Vec<u64>>) -> Self {
        for w in weights {
            self.add_bound(w);
        }
        self
    }

    fn add_bound(&mut self, weight: Vec<u64>) {
        if weight.len() != self.nvars || self.gens.is_empty() {
            return;
        }
        let floor = self
            .gens
            .iter()
            .map(|g| g.weighted_degree(&weight))
            .min()
            .unwrap_or(0);
        if floor > 0 && !self.bounds.iter().any(|b| b.weight == weight) {
            self.bounds.push(DepthBound { weight, floor });
        }
    }

    /// Upper bound on the number of factors a residual can still absorb.
    fn headroom(&self, a: &[u32]) -> u64 {
        self.bounds
            .iter()
            .map(|b| b.max_factors(a))
            .min()
            .unwrap_or(u64::MAX)
    }

    /// `m ∈ M^min_slack · I^r`.
    pub fn contains(&self, m: &ExponentVector, r: u32, min_slack: u64) -> Result<bool> {
        m.check_len(self.nvars)?;
        if self.gens.is_empty() {
            return Ok(r == 0 && m.degree() >= min_slack);
        }
        let mut memo = HashMap::new();
        Ok(self.search(m.entries(), m.degree(), r, min_slack, &mut memo))
    }

    fn search(
        &self,
        res: &[u32],
        deg: u64,
        depth: u32,
        min_slack: u64,
        memo: &mut HashMap<(Vec<u32>, u32), bool>,
    ) -> bool {
        if depth == 0 {
            return deg >= min_slack;
        }
        if deg < u64::from(depth) * self.alpha + min_slack {
            return false;
        }
        if self.headroom(res) < u64::from(depth) {
            return false;
        }
        if let Some(&hit) = memo.get(&(res.to_vec(), depth)) {
            return hit;
        }
        // Children that fit, most promising (largest remaining headroom) first.
        let mut children: Vec<(u64, usize, Vec<u32>)> = self
            .gens
            .iter()
            .enumerate()
            .filter(|(_, g)| g.entries().iter().zip(res).all(|(a, b)| a <= b))
            .map(|(i, g)| {
                let next: Vec<u32> = res.iter().zip(g.entries()).map(|(a, b)| a - b).collect();
                (self.headroom(&next), i, next)
            })
            .collect();
        children.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let found = children.into_iter().any(|(_, i, next)| {
            self.search(&next, deg - self.degrees[i], depth - 1, min_slack, memo)
        });
        memo.insert((res.to_vec(), depth), found);
        found
    }

    /// Largest `r` with `m ∈ I^r`.
    pub fn max_depth(&self, m: &ExponentVector) -> Result<u64> {
        m.check_len(self.nvars)?;
        if self.gens.is_empty() {
            return Ok(0);
        }
        if self.alpha == 0 {
            return Err(Error::Undefined("decomposition depth in the unit ideal"));
        }
        let (mut lo, mut hi) = (0u64, self.headroom(m.entries()));
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            let r = u32::try_from(mid).map_err(|_| Error::Overflow)?;
            if self.contains(m, r, 0)? {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        Ok(lo)
    }

    /// `J ⊆ M^min_slack · I^r`, reporting the first failing generator of `J`.
    pub fn ideal_contained(&self, j: &MonomialIdeal, r: u32, min_slack: u64) -> Result<Verdict> {
        if j.nvars() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                got: j.nvars(),
            });
        }
        let gens = j.generators();
        let fail = par::position_first(gens, |g| !self.contains(g, r, min_slack).unwrap_or(false));
        Ok(match fail {
            Some(i) => Verdict::Witness(gens[i].clone()),
            None => Verdict::Contained,
        })
    }
}

/// `m ∈ M^min_slack · I^r`, where `M` is the irrelevant ideal.
pub fn in_power(
    m: &ExponentVector,
    ideal: &MonomialIdeal,
    r: u32,
    min_slack: u64,
) -> Result<bool> {
    m.check_len(ideal.nvars())?;
    PowerMembership::new(ideal).contains(m, r, min_slack)
}

/// `J ⊆ M^min_slack · I^r`; on failure returns the first generator of `J`
/// outside it.
pub fn ideal_in_power(
    j: &MonomialIdeal,
    ideal: &MonomialIdeal,
    r: u32,
    min_slack: u64,
) -> Result<Verdict> {
    j.check_same(ideal)?;
    PowerMembership::new(ideal).ideal_contained(j, r, min_slack)
}
