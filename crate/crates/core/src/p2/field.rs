use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Coefficient field for plane computations: `F_p`, or `Q` with exact
/// fraction-free elimination over the integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u64),
    Rational,
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }
}

impl Field {
    /// `F_p` for a prime `p < 2^32`, so that products of residues fit a `u64`.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 {
            return Err(Error::Precondition(format!("prime {p} must be below 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    /// Fails unless the characteristic is 0 or exceeds `bound`.
    pub fn require_above(&self, bound: u64) -> Result<()> {
        match *self {
            Field::Prime(p) if p <= bound => Err(Error::Characteristic { p, needed: bound + 1 }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "char {}", self.characteristic())
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Ring operations used to assemble condition matrices and test vanishing.
pub(crate) trait Arith: Sync {
    type E: Clone + Send + Sync + fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_i64(&self, v: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;

    fn dot(&self, a: &[Self::E], b: &[Self::E]) -> Self::E {
        a.iter()
            .zip(b)
            .fold(self.zero(), |acc, (x, y)| self.add(&acc, &self.mul(x, y)))
    }

    /// `[1, x, x^2, ..., x^n]`.
    fn powers(&self, x: &Self::E, n: usize) -> Vec<Self::E> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.one());
        for i in 0..n {
            out.push(self.mul(&out[i], x));
        }
        out
    }

    /// Pascal's triangle up to row `n`, built in the ring.
    fn binomials(&self, n: usize) -> Vec<Vec<Self::E>> {
        let mut rows: Vec<Vec<Self::E>> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut row = Vec::with_capacity(i + 1);
            for k in 0..=i {
                row.push(if k == 0 || k == i {
                    self.one()
                } else {
                    self.add(&rows[i - 1][k - 1], &rows[i - 1][k])
                });
            }
            rows.push(row);
        }
        rows
    }

    fn rank(&self, rows: Vec<Vec<Self::E>>, ncols: usize) -> usize;
    fn kernel(&self, rows: Vec<Vec<Self::E>>, ncols: usize) -> Vec<Vec<Self::E>>;
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }
}

impl Arith for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce(v)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn rank(&self, rows: Vec<Vec<u64>>, ncols: usize) -> usize {
        super::linalg::fp_echelon(self, rows, ncols).pivots.len()
    }
    fn kernel(&self, rows: Vec<Vec<u64>>, ncols: usize) -> Vec<Vec<u64>> {
        super::linalg::fp_kernel(self, rows, ncols)
    }
}

/// Integer arithmetic standing in for `Q`; ranks and kernels are exact.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Zz;

impl Arith for Zz {
    type E = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::from(0)
    }
    fn one(&self) -> BigInt {
        BigInt::from(1)
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        num_traits::Zero::is_zero(a)
    }
    fn rank(&self, rows: Vec<Vec<BigInt>>, ncols: usize) -> usize {
        super::linalg::bareiss_echelon(rows, ncols).pivots.len()
    }
    fn kernel(&self, rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
        super::linalg::bareiss_kernel(rows, ncols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_inverses() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(!is_prime(1) && !is_prime(91));
        assert!(Field::prime(15).is_err());
        assert!(Field::prime(4_294_967_311).is_err());
        let f = Fp { p: 101 };
        for a in 1..101 {
            assert_eq!(f.mul(&a, &f.inv(a)), 1);
        }
        assert_eq!(f.from_i64(-1), 100);
    }

    #[test]
    fn characteristic_guard() {
        assert!(matches!(
            Field::Prime(5).require_above(65),
            Err(Error::Characteristic { p: 5, needed: 66 })
        ));
        assert!(Field::Rational.require_above(1000).is_ok());
        assert_eq!(Field::default().to_string(), "char 2147483647");
    }

    #[test]
    fn binomials_match_integers() {
        let t = Zz.binomials(10);
        assert_eq!(t[10][3], BigInt::from(120));
        let f = Fp { p: 7 };
        assert_eq!(f.binomials(7)[7][3], 0);
    }
}
