//! Facet normals of a Newton polyhedron by the double description method.
//!
//! The inequalities `<c, x> >= d` valid on `NP(I)` form the cone
//! `{(c, d) : c >= 0, <c, g> - d >= 0 for every generator g}`. Its extreme
//! rays other than `(0, -1)` are exactly the facet inequalities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FacetValuation;
use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;

/// Largest number of variables accepted by facet enumeration.
pub const FACET_DIM_CAP: usize = 6;

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<BigInt>,
    /// Bitset over processed constraints that vanish on this ray.
    tight: Vec<u64>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn popcount(bits: &[u64]) -> u32 {
    bits.iter().map(|w| w.count_ones()).sum()
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Extreme rays of `{y : <h, y> >= 0 for h in constraints}`, starting from a
/// simplicial cone on the first `dim` constraints whose rays are `initial`.
fn double_description(constraints: &[Vec<BigInt>], initial: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    let words = constraints.len().div_ceil(64);
    let mut rays: Vec<Ray> = initial
        .into_iter()
        .map(|coords| {
            let mut tight = vec![0u64; words];
            for (i, h) in constraints[..dim].iter().enumerate() {
                if dot(h, &coords).is_zero() {
                    set_bit(&mut tight, i);
                }
            }
            Ray { coords, tight }
        })
        .collect();

    for (hi, h) in constraints.iter().enumerate().skip(dim) {
        let values: Vec<BigInt> = rays.iter().map(|r| dot(h, &r.coords)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if minus.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    set_bit(&mut r.tight, hi);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let common: Vec<u64> = rays[p].tight.iter().zip(&rays[q].tight).map(|(a, b)| a & b).collect();
                if (popcount(&common) as usize) + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !is_subset(&common, &r.tight));
                if !adjacent {
                    continue;
                }
                let mut coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(yq, yp)| &values[p] * yq - &values[q] * yp)
                    .collect();
                normalize(&mut coords);
                let mut tight = common;
                set_bit(&mut tight, hi);
                next.push(Ray { coords, tight });
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_zero() {
                set_bit(&mut r.tight, hi);
                next.push(r);
            } else if values[i].is_positive() {
                next.push(r);
            }
        }
        rays = next;
    }
    rays.into_iter().map(|r| r.coords).collect()
}

/// Facets of `NP(I)` with a positive value on `I`, normals coprime and
/// sorted in descending lexicographic order.
pub fn facet_valuations(ideal: &MonomialIdeal) -> Result<Vec<FacetValuation>> {
    if ideal.is_zero() {
        return Err(Error::Undefined("Newton polyhedron of the zero ideal"));
    }
    let n = ideal.nvars();
    if n > FACET_DIM_CAP {
        return Err(Error::UnsupportedDimension {
            dim: n,
            cap: FACET_DIM_CAP,
        });
    }
    let dim = n + 1;
    let gens = ideal.generators();
    let mut constraints: Vec<Vec<BigInt>> = Vec::with_capacity(n + gens.len());
    for j in 0..n {
        let mut h = vec![BigInt::zero(); dim];
        h[j] = BigInt::one();
        constraints.push(h);
    }
    for g in gens {
        let mut h: Vec<BigInt> = g.entries().iter().map(|&e| BigInt::from(e)).collect();
        h.push(-BigInt::one());
        constraints.push(h);
    }
    let mut initial = Vec::with_capacity(dim);
    for k in 0..n {
        let mut y = vec![BigInt::zero(); dim];
        y[k] = BigInt::one();
        y[n] = BigInt::from(gens[0].entries()[k]);
        initial.push(y);
    }
    let mut down = vec![BigInt::zero(); dim];
    down[n] = -BigInt::one();
    initial.push(down);

    let mut out: Vec<FacetValuation> = Vec::new();
    for mut ray in double_description(&constraints, initial, dim) {
        ray.truncate(n);
        if ray.iter().all(Zero::is_zero) {
            continue;
        }
        normalize(&mut ray);
        let normal: Vec<u64> = ray
            .iter()
            .map(|x| x.to_u64().expect("facet normals are nonnegative"))
            .collect();
        let value = gens.iter().map(|g| g.weighted_degree(&normal)).min().unwrap_or(0);
        if value > 0 && !out.iter().any(|f| f.normal == normal) {
            out.push(FacetValuation { normal, value });
        }
    }
    out.sort_by(|a, b| b.normal.cmp(&a.normal));
    Ok(out)
}
