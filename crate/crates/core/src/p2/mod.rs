//! Fat points at arbitrary positions in `P^2`, by linear algebra on the
//! coefficients of degree-`d` forms.
//!
//! Vanishing to order `μ` at `q` is imposed through the Taylor coefficients
//! of `f(q + u e_s + v e_t)` of total order below `μ`, where `x_r` is the
//! last coordinate with `q_r != 0`. Coordinate vertices impose monomial
//! conditions; their monomials are dropped from the column set instead of
//! adding rows.

mod ex3;
mod field;
mod linalg;
mod text;

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use field::{Arith, Fp, Zz};

pub use ex3::{build_ex3, line_noncontainment, Ex3, LineCertificate, EX3_MAX_ATTEMPTS};
pub use field::{Field, DEFAULT_PRIME};
pub use text::{format_p2_scheme, parse_p2_scheme};

fn primitive(mut c: [i64; 3]) -> Option<[i64; 3]> {
    let g = c.iter().fold(0i64, |acc, v| acc.gcd(v));
    if g == 0 {
        return None;
    }
    let last = *c.iter().rev().find(|v| **v != 0).expect("nonzero");
    let g = if last < 0 { -g } else { g };
    for v in &mut c {
        *v /= g;
    }
    Some(c)
}

/// A point of `P^2` with integer homogeneous coordinates, stored primitive
/// with the last nonzero coordinate positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PlanePoint([i64; 3]);

impl PlanePoint {
    pub fn new(coords: [i64; 3]) -> Result<Self> {
        primitive(coords)
            .map(PlanePoint)
            .ok_or_else(|| Error::InvalidScheme("point with all coordinates zero".into()))
    }

    pub fn coords(&self) -> [i64; 3] {
        self.0
    }

    /// Coordinates over `F_p` scaled so the last nonzero one is 1, or `None`
    /// if the point reduces to zero.
    pub fn normalized_mod(&self, p: u64) -> Option<[u64; 3]> {
        let f = Fp { p };
        let mut c = self.0.map(|v| f.reduce(v));
        let last = *c.iter().rev().find(|v| **v != 0)?;
        let inv = f.inv(last);
        for v in &mut c {
            *v = *v * inv % p;
        }
        Some(c)
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.0[0], self.0[1], self.0[2])
    }
}

impl Serialize for PlanePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A linear form `c0 x + c1 y + c2 z`, up to scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm([i64; 3]);

impl LinearForm {
    pub fn new(coeffs: [i64; 3]) -> Result<Self> {
        primitive(coeffs)
            .map(LinearForm)
            .ok_or_else(|| Error::Precondition("zero linear form".into()))
    }

    pub fn coeffs(&self) -> [i64; 3] {
        self.0
    }

    pub fn eval(&self, q: &PlanePoint) -> i128 {
        self.0.iter().zip(q.0).map(|(a, b)| i128::from(*a) * i128::from(b)).sum()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*x0 + {}*x1 + {}*x2", self.0[0], self.0[1], self.0[2])
    }
}

impl Serialize for LinearForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `m_1 q_1 + ... + m_s q_s` in `P^2` over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneFatScheme {
    points: Vec<(PlanePoint, u32)>,
    field: Field,
    seed: Option<u64>,
}

impl PlaneFatScheme {
    /// Points must stay pairwise distinct and nonzero over `field`.
    pub fn new(points: Vec<(PlanePoint, u32)>, field: Field) -> Result<Self> {
        for (i, (q, mult)) in points.iter().enumerate() {
            if *mult == 0 {
                return Err(Error::InvalidScheme(format!("point {q} has multiplicity 0")));
            }
            let key = field_key(q, field)
                .ok_or_else(|| Error::InvalidScheme(format!("point {q} vanishes in {field}")))?;
            for (r, _) in &points[..i] {
                if field_key(r, field) == Some(key.clone()) {
                    return Err(Error::InvalidScheme(format!("points {r} and {q} coincide in {field}")));
                }
            }
        }
        Ok(PlaneFatScheme {
            points,
            field,
            seed: None,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn points(&self) -> &[(PlanePoint, u32)] {
        &self.points
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn is_reduced(&self) -> bool {
        self.points.iter().all(|(_, m)| *m == 1)
    }

    /// `C(d+2,2) - Σ C(m m_i + 1, 2)`, the dimension if all conditions were independent.
    pub fn virtual_dim(&self, m: u32, d: u32) -> i64 {
        let forms = binom2(i64::from(d) + 2);
        forms
            - self
                .points
                .iter()
                .map(|(_, mi)| binom2(i64::from(m) * i64::from(*mi) + 1))
                .sum::<i64>()
    }

    fn check_characteristic(&self, m: u32, d: u32) -> Result<()> {
        let top = self.points.iter().map(|(_, mi)| u64::from(m) * u64::from(*mi)).max().unwrap_or(0);
        self.field.require_above(top.max(u64::from(d)))
    }
}

/// Projective identity of a point over the field, for distinctness checks.
fn field_key(q: &PlanePoint, field: Field) -> Option<Vec<u64>> {
    match field {
        Field::Prime(p) => q.normalized_mod(p).map(|c| c.to_vec()),
        Field::Rational => Some(q.0.iter().map(|&v| v as u64).collect()),
    }
}

fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// `dim (I(mZ))_d` together with the expected count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertInfo {
    pub m: u32,
    pub d: u32,
    pub dim: usize,
    pub virtual_dim: i64,
    /// The conditions are linearly independent, i.e. `dim == virtual_dim`.
    pub independent: bool,
    pub field: Field,
}

pub fn hilbert_dim(z: &PlaneFatScheme, m: u32, d: u32) -> Result<usize> {
    hilbert_info(z, m, d).map(|h| h.dim)
}

pub fn hilbert_info(z: &PlaneFatScheme, m: u32, d: u32) -> Result<HilbertInfo> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    z.check_characteristic(m, d)?;
    let dim = match z.field {
        Field::Prime(p) => System::new(&Fp { p }, z, m, d, true).dim(),
        Field::Rational => System::new(&Zz, z, m, d, true).dim(),
    };
    let virtual_dim = z.virtual_dim(m, d);
    Ok(HilbertInfo {
        m,
        d,
        dim,
        virtual_dim,
        independent: dim as i64 == virtual_dim,
        field: z.field,
    })
}

/// `α(I(mZ))`: the least `d` with `(I(mZ))_d != 0`, searched upward from
/// the largest multiplicity.
pub fn alpha_p2(z: &PlaneFatScheme, m: u32) -> Result<u32> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let mults = z.points.iter().map(|(_, mi)| m * mi);
    let lo = mults.clone().max().unwrap_or(0);
    // A product of lines, one through each point per unit of multiplicity.
    let hi: u32 = mults.sum();
    for d in lo..=hi {
        if hilbert_dim(z, m, d)? > 0 {
            return Ok(d);
        }
    }
    Err(Error::Consistency(format!("no form of degree <= {hi} in I({m}Z)")))
}

/// Regularity of the ideal of reduced points: one more than the degree at
/// which the Hilbert function reaches the number of points.
pub fn regularity_reduced(z: &PlaneFatScheme) -> Result<u32> {
    if !z.is_reduced() {
        return Err(Error::Precondition("regularity needs a reduced scheme".into()));
    }
    let n = z.points.len() as i64;
    for d in 0..=(n.max(1) as u32) {
        let codim = binom2(i64::from(d) + 2) - hilbert_dim(z, 1, d)? as i64;
        if codim == n {
            return Ok(d + 1);
        }
    }
    Err(Error::Consistency("Hilbert function of points did not saturate".into()))
}

/// The largest `k` with `F^k` dividing every form in `(I(mZ))_d`.
pub fn vanishing_order_on_line(z: &PlaneFatScheme, m: u32, d: u32, line: &LinearForm) -> Result<u32> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    z.check_characteristic(m, d)?;
    match z.field {
        Field::Prime(p) => System::new(&Fp { p }, z, m, d, true).order_on_line(line),
        Field::Rational => System::new(&Zz, z, m, d, true).order_on_line(line),
    }
}

/// Monomials `x^a` of degree `d`, in descending lex order.
fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(binom2(i64::from(d) + 2) as usize);
    for a0 in (0..=d).rev() {
        for a1 in (0..=d - a0).rev() {
            out.push([a0, a1, d - a0 - a1]);
        }
    }
    out
}

/// The linear system of `(I(mZ))_d`: surviving monomials and the Taylor rows
/// of the non-vertex points.
struct System<'a, A: Arith> {
    arith: &'a A,
    d: u32,
    cols: Vec<[u32; 3]>,
    rows: Vec<Vec<A::E>>,
    binom: Vec<Vec<A::E>>,
}

impl<'a, A: Arith> System<'a, A> {
    fn new(arith: &'a A, z: &PlaneFatScheme, m: u32, d: u32, vertex_shortcut: bool) -> Self {
        let coords: Vec<([A::E; 3], u32, Option<usize>)> = z
            .points
            .iter()
            .map(|(q, mi)| {
                let c = q.0.map(|v| arith.from_i64(v));
                let nonzero: Vec<usize> = (0..3).filter(|&i| !arith.is_zero(&c[i])).collect();
                let vertex = (nonzero.len() == 1).then(|| nonzero[0]);
                (c, m * mi, vertex)
            })
            .collect();
        let mut cols = monomials(d);
        if vertex_shortcut {
            // At the vertex e_r, x^a has order d - a_r.
            cols.retain(|a| {
                coords
                    .iter()
                    .all(|(_, mu, v)| v.is_none_or(|r| d - a[r] >= *mu))
            });
        }
        let binom = arith.binomials(d as usize);
        let mut sys = System {
            arith,
            d,
            cols,
            rows: Vec::new(),
            binom,
        };
        let blocks = par::map(&coords, |(c, mu, vertex)| {
            if vertex_shortcut && vertex.is_some() {
                Vec::new()
            } else {
                sys.taylor_rows(c, *mu)
            }
        });
        sys.rows = blocks.into_iter().flatten().collect();
        sys
    }

    fn taylor_rows(&self, q: &[A::E; 3], mu: u32) -> Vec<Vec<A::E>> {
        let a = self.arith;
        let r = (0..3).rev().find(|&i| !a.is_zero(&q[i])).expect("nonzero point");
        let (s, t) = match r {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let pw: Vec<Vec<A::E>> = q.iter().map(|x| a.powers(x, self.d as usize)).collect();
        let mut rows = Vec::new();
        for i in 0..mu {
            for j in 0..mu - i {
                let row = self
                    .cols
                    .iter()
                    .map(|e| {
                        if e[s] < i || e[t] < j {
                            return a.zero();
                        }
                        let (es, et) = (e[s] as usize, e[t] as usize);
                        let (i, j) = (i as usize, j as usize);
                        let x = a.mul(&self.binom[es][i], &pw[s][es - i]);
                        let y = a.mul(&self.binom[et][j], &pw[t][et - j]);
                        a.mul(&a.mul(&x, &y), &pw[r][e[r] as usize])
                    })
                    .collect();
                rows.push(row);
            }
        }
        rows
    }

    fn dim(&self) -> usize {
        self.cols.len() - self.arith.rank(self.rows.clone(), self.cols.len())
    }

    fn basis(&self) -> Vec<Vec<A::E>> {
        self.arith.kernel(self.rows.clone(), self.cols.len())
    }

    /// Coefficient of `ε^j` in `f(q + ε e_s)` as a row over the columns.
    fn directional_row(&self, q: &[A::E; 3], s: usize, j: u32) -> Vec<A::E> {
        let a = self.arith;
        let pw: Vec<Vec<A::E>> = q.iter().map(|x| a.powers(x, self.d as usize)).collect();
        self.cols
            .iter()
            .map(|e| {
                if e[s] < j {
                    return a.zero();
                }
                let mut v = a.mul(&self.binom[e[s] as usize][j as usize], &pw[s][(e[s] - j) as usize]);
                for t in (0..3).filter(|&t| t != s) {
                    v = a.mul(&v, &pw[t][e[t] as usize]);
                }
                v
            })
            .collect()
    }

    /// Write `P = σ u + τ v + ε e_s` with `u, v` spanning `L` and `F(e_s) != 0`,
    /// so `F∘P = ε F(e_s)`. Then `F^k | f` iff the `ε^j` coefficients of
    /// `f∘P`, forms of degree `d - j` in `(σ, τ)`, vanish for `j < k`; each is
    /// tested at the `d + 1` points `u + t v`.
    fn order_on_line(&self, line: &LinearForm) -> Result<u32> {
        let a = self.arith;
        let f = line.0.map(|v| a.from_i64(v));
        let s = (0..3)
            .find(|&i| !a.is_zero(&f[i]))
            .ok_or_else(|| Error::Precondition("line vanishes in this field".into()))?;
        let basis = self.basis();
        if basis.is_empty() {
            return Err(Error::Precondition("(I(mZ))_d is zero".into()));
        }
        let (u, v) = span_of_line(a, &line.0)?;
        let points: Vec<[A::E; 3]> = (0..=self.d)
            .map(|t| {
                let t = a.from_i64(i64::from(t));
                [0, 1, 2].map(|i| a.add(&u[i], &a.mul(&t, &v[i])))
            })
            .collect();
        for j in 0..=self.d {
            let rows: Vec<Vec<A::E>> = par::map(&points, |q| self.directional_row(q, s, j));
            let hit = basis
                .iter()
                .any(|b| rows.iter().any(|row| !a.is_zero(&a.dot(row, b))));
            if hit {
                return Ok(j);
            }
        }
        Err(Error::Consistency("nonzero form divisible by F^(d+1)".into()))
    }
}

/// Two independent points on the line `F = 0`, taken among `F × e_i`.
fn span_of_line<A: Arith>(a: &A, f: &[i64; 3]) -> Result<([A::E; 3], [A::E; 3])> {
    let cross = |e: usize| -> [i64; 3] {
        let mut w = [0i64; 3];
        w[e] = 1;
        [f[1] * w[2] - f[2] * w[1], f[2] * w[0] - f[0] * w[2], f[0] * w[1] - f[1] * w[0]]
    };
    let cands: Vec<[A::E; 3]> = (0..3).map(|e| cross(e).map(|v| a.from_i64(v))).collect();
    for i in 0..3 {
        for j in i + 1..3 {
            let (u, v) = (&cands[i], &cands[j]);
            let minors = [(0, 1), (0, 2), (1, 2)];
            let independent = minors.iter().any(|&(x, y)| {
                let l = a.mul(&u[x], &v[y]);
                let r = a.mul(&u[y], &v[x]);
                // l != r, tested as l + (-1) r != 0.
                !a.is_zero(&a.add(&l, &a.mul(&a.from_i64(-1), &r)))
            });
            if independent {
                return Ok((u.clone(), v.clone()));
            }
        }
    }
    Err(Error::Precondition("line vanishes in this field".into()))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fatpoints::MonomialFatScheme;

    pub fn pt(c: [i64; 3]) -> PlanePoint {
        PlanePoint::new(c).unwrap()
    }

    pub fn scheme(points: &[([i64; 3], u32)], field: Field) -> PlaneFatScheme {
        PlaneFatScheme::new(points.iter().map(|(c, m)| (pt(*c), *m)).collect(), field).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(pt([2, 4, -6]).coords(), [-1, -2, 3]);
        assert_eq!(pt([0, 3, 0]).coords(), [0, 1, 0]);
        assert!(PlanePoint::new([0, 0, 0]).is_err());
        assert_eq!(pt([2, 4, 6]).normalized_mod(7), Some([5, 3, 1]));
        assert!(PlaneFatScheme::new(vec![(pt([1, 0, 0]), 1), (pt([8, 0, 7]), 1)], Field::Prime(7)).is_err());
        assert!(PlaneFatScheme::new(vec![(pt([1, 0, 0]), 0)], Field::default()).is_err());
    }

    #[test]
    fn single_point_pencil() {
        for field in [Field::default(), Field::Rational] {
            let z = scheme(&[([1, 2, 3], 1)], field);
            assert_eq!(hilbert_dim(&z, 1, 1).unwrap(), 2);
            assert_eq!(regularity_reduced(&z).unwrap(), 1);
            assert_eq!(alpha_p2(&z, 3).unwrap(), 3);
        }
    }

    #[test]
    fn three_general_points() {
        let z = scheme(&[([1, 2, 3], 1), ([4, -1, 7], 1), ([2, 5, -3], 1)], Field::default());
        assert_eq!(regularity_reduced(&z).unwrap(), 2);
        assert_eq!(alpha_p2(&z, 1).unwrap(), 2);
        // Three double points: the three lines through pairs, and nothing in degree 2.
        assert_eq!(alpha_p2(&z, 2).unwrap(), 3);
        assert_eq!(hilbert_dim(&z, 2, 3).unwrap(), 1);
    }

    #[test]
    fn characteristic_errors() {
        let z = scheme(&[([1, 2, 3], 1)], Field::Prime(5));
        assert!(matches!(hilbert_dim(&z, 1, 5), Err(Error::Characteristic { p: 5, needed: 6 })));
        assert!(matches!(hilbert_dim(&z, 5, 2), Err(Error::Characteristic { .. })));
        assert!(hilbert_dim(&z, 1, 4).is_ok());
        assert!(hilbert_dim(&z, 0, 4).is_err());
    }

    #[test]
    fn collinear_points_and_lines() {
        // Five points on y = x + z: order along the line of the quartic system.
        let line = LinearForm::new([1, -1, 1]).unwrap();
        let pts: Vec<([i64; 3], u32)> = (1..=5).map(|t| ([t, t + 1, 1], 1)).collect();
        for field in [Field::default(), Field::Rational] {
            let z = scheme(&pts, field);
            assert_eq!(regularity_reduced(&z).unwrap(), 5);
            assert_eq!(alpha_p2(&z, 1).unwrap(), 1);
            assert_eq!(vanishing_order_on_line(&z, 1, 1, &line).unwrap(), 1);
            assert_eq!(vanishing_order_on_line(&z, 1, 4, &line).unwrap(), 1);
            assert_eq!(vanishing_order_on_line(&z, 1, 5, &line).unwrap(), 0);
            assert_eq!(vanishing_order_on_line(&z, 3, 6, &line).unwrap(), 3);
            let other = LinearForm::new([1, 1, 1]).unwrap();
            assert_eq!(vanishing_order_on_line(&z, 1, 5, &other).unwrap(), 0);
        }
    }

    #[test]
    fn fields_agree_on_small_cases() {
        let pts = [([1, 0, 0], 2), ([0, 1, 0], 1), ([0, 0, 1], 3), ([1, 1, 1], 2), ([2, -3, 5], 1)];
        let zp = scheme(&pts, Field::default());
        let zq = scheme(&pts, Field::Rational);
        for m in 1..=2 {
            for d in 0..=9 {
                assert_eq!(hilbert_info(&zp, m, d).unwrap().dim, hilbert_info(&zq, m, d).unwrap().dim, "m={m} d={d}");
            }
        }
    }

    fn shortcut_free_dim(z: &PlaneFatScheme, m: u32, d: u32) -> usize {
        let Field::Prime(p) = z.field() else { unreachable!() };
        System::new(&Fp { p }, z, m, d, false).dim()
    }

    #[test]
    fn vertices_match_monomial_symbolic_powers() {
        for mults in [[1, 1, 1], [2, 1, 1], [1, 2, 3]] {
            let pts: Vec<([i64; 3], u32)> = vec![([1, 0, 0], mults[0]), ([0, 1, 0], mults[1]), ([0, 0, 1], mults[2])];
            let z = scheme(&pts, Field::default());
            let mono = MonomialFatScheme::coordinate_points(2, &[(0, mults[0]), (1, mults[1]), (2, mults[2])]).unwrap();
            for m in 1..=4 {
                let sym = mono.symbolic_power(m).unwrap();
                for d in 0..=10 {
                    let count = monomials(d)
                        .into_iter()
                        .filter(|a| sym.contains_monomial(&a.to_vec().into()).unwrap())
                        .count();
                    assert_eq!(hilbert_dim(&z, m, d).unwrap(), count, "m={m} d={d}");
                    if m <= 2 {
                        assert_eq!(shortcut_free_dim(&z, m, d), count, "m={m} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn hilbert_function_shape() {
        let z = scheme(&[([1, 0, 0], 1), ([0, 1, 0], 2), ([3, 1, 1], 1), ([1, 4, 2], 2), ([5, 2, 7], 1)], Field::default());
        for m in 1..=3u32 {
            let mut prev_codim = 0i64;
            for d in 0..=14u32 {
                let info = hilbert_info(&z, m, d).unwrap();
                assert!(info.dim as i64 >= info.virtual_dim);
                assert_eq!(info.independent, info.dim as i64 == info.virtual_dim);
                let codim = binom2(i64::from(d) + 2) - info.dim as i64;
                assert!(codim >= prev_codim);
                prev_codim = codim;
                if m > 1 {
                    assert!(info.dim <= hilbert_dim(&z, m - 1, d).unwrap());
                }
            }
        }
    }

    /// Multiply two forms given over their column sets.
    fn product(
        a: &Fp,
        (ca, fa): (&[[u32; 3]], &[u64]),
        (cb, fb): (&[[u32; 3]], &[u64]),
    ) -> std::collections::HashMap<[u32; 3], u64> {
        let mut out = std::collections::HashMap::new();
        for (x, u) in ca.iter().zip(fa) {
            for (y, v) in cb.iter().zip(fb) {
                let e = [x[0] + y[0], x[1] + y[1], x[2] + y[2]];
                let slot = out.entry(e).or_insert(0u64);
                *slot = a.add(slot, &a.mul(u, v));
            }
        }
        out
    }

    #[test]
    fn products_land_in_the_sum() {
        let z = scheme(&[([1, 0, 0], 1), ([1, 1, 1], 1), ([2, -1, 3], 2), ([0, 5, 1], 1)], Field::default());
        let f = Fp { p: DEFAULT_PRIME };
        let (a, d1, b, d2) = (1, 3, 2, 5);
        let s1 = System::new(&f, &z, a, d1, true);
        let s2 = System::new(&f, &z, b, d2, true);
        let target = System::new(&f, &z, a + b, d1 + d2, false);
        for u in s1.basis().iter().take(3) {
            for v in s2.basis().iter().take(3) {
                let prod = product(&f, (&s1.cols, u), (&s2.cols, v));
                let coeffs: Vec<u64> = target.cols.iter().map(|e| *prod.get(e).unwrap_or(&0)).collect();
                for row in &target.rows {
                    assert_eq!(f.dot(row, &coeffs), 0);
                }
            }
        }
    }
}
