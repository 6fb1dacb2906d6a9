//! `Z = p_1 + ... + p_N + 2 p_0` at the coordinate vertices of `P^N`, where
//! `p_j` has only `x_j` nonzero. Every monomial of `I(mZ)` is factored
//! explicitly into `m` monomials of `I(Z)`, so `I(Z)^m = I(mZ)`.
//!
//! With `a_1 <= ... <= a_N` (after relabeling) and `b = a_1 + ... + a_{N-1}`,
//! `x^a ∈ I(mZ)` iff `a_0 + b >= m` and `b + a_N >= 2m`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fatpoints::MonomialFatScheme;
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::par;

/// The scheme `p_1 + ... + p_N + 2 p_0` in `P^N`.
pub fn vertex_scheme(n: usize) -> Result<MonomialFatScheme> {
    let mut pts: Vec<(usize, u32)> = (1..=n).map(|j| (j, 1)).collect();
    pts.push((0, 2));
    MonomialFatScheme::coordinate_points(n, &pts)
}

/// One step of the pairing reduction, in sorted coordinates `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionState {
    pub step: usize,
    /// Working exponents of the sorted `x_1..x_N`.
    pub e: Vec<u32>,
    /// `e_1 + ... + e_{N-1}`.
    pub b: u64,
}

impl DecompositionState {
    fn new(step: usize, e: Vec<u32>) -> Self {
        let n = e.len();
        let b = e[..n - 1].iter().map(|&x| u64::from(x)).sum();
        DecompositionState { step, e, b }
    }

    /// Nondecreasing entries, `b + e_N` even, and `b >= e_N`.
    fn invariants_hold(&self) -> bool {
        let last = u64::from(*self.e.last().expect("N >= 2"));
        self.e.windows(2).all(|w| w[0] <= w[1]) && (self.b + last).is_multiple_of(2) && self.b >= last
    }
}

/// Factor `f ∈ I(mZ)` into `m` monomials of `I(Z)` whose product divides `f`.
pub fn decompose(f: &ExponentVector, n: usize, m: u32) -> Result<Vec<ExponentVector>> {
    decompose_traced(f, n, m).map(|(factors, _)| factors)
}

/// As [`decompose`], also returning every state of the pairing reduction.
pub fn decompose_traced(
    f: &ExponentVector,
    n: usize,
    m: u32,
) -> Result<(Vec<ExponentVector>, Vec<DecompositionState>)> {
    f.check_len(n + 1)?;
    if n < 2 {
        return Err(Error::Precondition("decomposition needs N >= 2".into()));
    }
    let a = f.entries();
    // perm[p] is the variable sitting at sorted position p + 1.
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.sort_by_key(|&j| (a[j], j));
    let sorted: Vec<u32> = perm.iter().map(|&j| a[j]).collect();
    let a0 = u64::from(a[0]);
    let a_n = u64::from(sorted[n - 1]);
    let b: u64 = sorted[..n - 1].iter().map(|&x| u64::from(x)).sum();
    let m64 = u64::from(m);
    if a0 + b < m64 || b + a_n < 2 * m64 {
        return Err(Error::NotInSymbolicPower {
            monomial: f.to_string(),
            m,
        });
    }
    let factor = |pairs: &[usize]| {
        let mut v = vec![0u32; n + 1];
        for &j in pairs {
            v[j] += 1;
        }
        ExponentVector::new(v)
    };
    let x_n = perm[n - 1];

    if b < m64 {
        let mut out = Vec::with_capacity(m as usize);
        for (p, &count) in sorted[..n - 1].iter().enumerate() {
            for _ in 0..count {
                out.push(factor(&[perm[p], x_n]));
            }
        }
        for _ in 0..(m64 - b) {
            out.push(factor(&[0, x_n, x_n]));
        }
        return Ok((out, Vec::new()));
    }

    // b >= m. Capping every entry at m keeps b >= m and b + a_N >= 2m, and
    // leaves a_N <= m. Then trim to b' + a = 2m, nondecreasing.
    let capped: Vec<u32> = sorted.iter().map(|&x| x.min(m)).collect();
    let b: u64 = capped[..n - 1].iter().map(|&x| u64::from(x)).sum();
    let mut e = capped.clone();
    let target_last = u64::from(capped[n - 2]).max(2 * m64 - b.min(2 * m64));
    e[n - 1] = target_last as u32;
    if b + target_last > 2 * m64 {
        let mut remaining = 2 * m64 - target_last;
        let mut prev = 0u64;
        let tail: Vec<u64> = (0..n - 1)
            .map(|i| capped[i + 1..n - 1].iter().map(|&x| u64::from(x)).sum())
            .collect();
        for i in 0..n - 1 {
            let v = prev.max(remaining.saturating_sub(tail[i]));
            if v > u64::from(capped[i]) {
                return Err(Error::Consistency(format!("no trimming of {f} for m = {m}")));
            }
            e[i] = v as u32;
            remaining -= v;
            prev = v;
        }
    }

    let mut states = vec![DecompositionState::new(0, e.clone())];
    let mut out = Vec::with_capacity(m as usize);
    while states.last().expect("nonempty").b > 0 {
        let cur = states.last().expect("nonempty");
        if !cur.invariants_hold() {
            return Err(Error::Consistency(format!("pairing invariants fail at {cur:?}")));
        }
        let e = &cur.e;
        let j = (0..n).find(|&t| e[t] == e[n - 2]).expect("e_{N-1} occurs");
        let k = if e[n - 1] > e[n - 2] { n - 1 } else { j + 1 };
        let mut next = e.clone();
        next[j] -= 1;
        next[k] -= 1;
        out.push(factor(&[perm[j], perm[k]]));
        let state = DecompositionState::new(cur.step + 1, next);
        if state.b >= cur.b {
            return Err(Error::Consistency("pairing step did not decrease b".into()));
        }
        states.push(state);
    }
    let last = states.last().expect("nonempty");
    if last.e.iter().any(|&x| x != 0) || out.len() != m as usize {
        return Err(Error::Consistency(format!("pairing of {f} ended at {:?} with {} factors", last.e, out.len())));
    }
    Ok((out, states))
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexTheoremRow {
    pub m: u32,
    pub generators: usize,
    pub decomposed: bool,
    pub sdefect_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexTheoremReport {
    pub n: usize,
    pub rows: Vec<VertexTheoremRow>,
}

impl VertexTheoremReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.decomposed && r.sdefect_zero)
    }
}

/// Decompose every minimal generator of `I(mZ)` for `m <= m_max` and compare
/// `I(Z)^m` with `I(mZ)` directly.
pub fn verify_vertex_theorem(n: usize, m_max: u32) -> Result<VertexTheoremReport> {
    let z = vertex_scheme(n)?;
    let ideal = z.ideal()?;
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let sym = z.symbolic_power(m)?;
        let checks = par::map(sym.generators(), |g| check_factorization(g, n, m, &ideal));
        for c in &checks {
            if let Err(e) = c {
                return Err(e.clone());
            }
        }
        let decomposed = checks.into_iter().all(|c| c == Ok(true));
        if !decomposed {
            return Err(Error::Consistency(format!("a generator of I({m}Z) did not factor")));
        }
        rows.push(VertexTheoremRow {
            m,
            generators: sym.len(),
            decomposed,
            sdefect_zero: ideal.power(m)? == sym,
        });
    }
    Ok(VertexTheoremReport { n, rows })
}

fn check_factorization(f: &ExponentVector, n: usize, m: u32, ideal: &MonomialIdeal) -> Result<bool> {
    let factors = decompose(f, n, m)?;
    let mut product = ExponentVector::zero(n + 1);
    for g in &factors {
        if !ideal.contains_monomial(g)? {
            return Ok(false);
        }
        product = product.checked_add(g)?;
    }
    Ok(factors.len() == m as usize && product.divides(f))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::monomial::tests::{ev, ideal};

    #[test]
    fn scheme_generators() {
        assert_eq!(
            vertex_scheme(2).unwrap().ideal().unwrap(),
            ideal(3, &[&[0, 1, 1], &[1, 2, 0], &[1, 0, 2]])
        );
        assert_eq!(vertex_scheme(1).unwrap().ideal().unwrap().len(), 1);
        // x_i x_j for 1 <= i < j <= 3 and x_0 x_i^2.
        assert_eq!(vertex_scheme(3).unwrap().ideal().unwrap().len(), 6);
    }

    /// Minimal monomials of degree <= 4 vanishing to order 1 at e_1..e_n and
    /// order 2 at e_0, found by listing exponent vectors.
    fn brute_force_generators(n: usize) -> Vec<ExponentVector> {
        let order_at = |v: &[u32], i: usize| v.iter().sum::<u32>() - v[i];
        let mut members = Vec::new();
        let mut v = vec![0u32; n + 1];
        loop {
            if (1..=n).all(|i| order_at(&v, i) >= 1) && order_at(&v, 0) >= 2 {
                members.push(ExponentVector::new(v.clone()));
            }
            let Some(k) = (0..=n).find(|&k| v[k] < 4) else { break };
            v[k] += 1;
            v[..k].iter_mut().for_each(|x| *x = 0);
        }
        let mut minimal: Vec<_> = members
            .iter()
            .filter(|m| m.degree() <= 4 && !members.iter().any(|o| o != *m && o.divides(m)))
            .cloned()
            .collect();
        minimal.sort();
        minimal
    }

    #[test]
    fn generators_match_brute_force() {
        for n in 2..=4 {
            let z = vertex_scheme(n).unwrap();
            assert_eq!(z.ideal().unwrap().generators(), brute_force_generators(n).as_slice());
        }
        assert_eq!(brute_force_generators(3).len(), 6);
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(decompose(&ev(&[0, 2, 2]), 2, 2).unwrap(), vec![ev(&[0, 1, 1]), ev(&[0, 1, 1])]);
        assert_eq!(decompose(&ev(&[2, 4, 0]), 2, 2).unwrap(), vec![ev(&[1, 2, 0]), ev(&[1, 2, 0])]);
        for g in vertex_scheme(2).unwrap().ideal().unwrap().generators() {
            assert_eq!(decompose(g, 2, 1).unwrap(), vec![g.clone()]);
        }
        assert!(matches!(decompose(&ev(&[0, 1, 1]), 2, 2), Err(Error::NotInSymbolicPower { .. })));
    }

    #[test]
    fn decomposition_holds_on_acceptance_range() {
        for (n, m_max) in [(2, 5), (3, 4), (4, 3)] {
            let r = verify_vertex_theorem(n, m_max).unwrap();
            assert!(r.holds(), "N = {n}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn reduction_keeps_invariants(n in 2usize..=5, m in 1u32..=6, raw in prop::collection::vec(0u32..=12, 6)) {
            let f = ExponentVector::new(raw[..=n].to_vec());
            let z = vertex_scheme(n).unwrap();
            prop_assume!(z.contains(&f, m).unwrap());
            let (factors, states) = decompose_traced(&f, n, m).unwrap();
            prop_assert_eq!(factors.len(), m as usize);
            let ideal = z.ideal().unwrap();
            let mut product = ExponentVector::zero(n + 1);
            for g in &factors {
                prop_assert!(ideal.contains_monomial(g).unwrap());
                product = product.checked_add(g).unwrap();
            }
            prop_assert!(product.divides(&f));
            for s in &states {
                prop_assert!(s.invariants_hold());
            }
            prop_assert!(states.windows(2).all(|w| w[1].b < w[0].b));
            if let Some(first) = states.first() {
                prop_assert!(states.len() as u64 <= first.b + 1);
            }
        }
    }
}
