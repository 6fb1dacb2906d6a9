//! Exact rationals and the `p/q` text form used in reports.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Always `p/q`, lowest terms, denominator positive (`2` renders as `2/1`).
pub fn to_pq(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_pq(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse(0, format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

pub fn ceil_u64(q: &Rational) -> u64 {
    let c = q.ceil().to_integer();
    if c.is_negative() {
        0
    } else {
        u64::try_from(c).unwrap_or(u64::MAX)
    }
}

pub fn floor_u64(q: &Rational) -> u64 {
    let f = q.floor().to_integer();
    if f.is_negative() {
        0
    } else {
        u64::try_from(f).unwrap_or(u64::MAX)
    }
}

/// Least common multiple of the denominators of `xs`.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn ratio(m: u64, r: u64) -> Rational {
    Rational::new(BigInt::from(m), BigInt::from(r))
}

/// Serde helper writing a rational as `p/q`.
pub fn serialize_pq<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_pq(q))
}

pub fn serialize_pq_opt<S: serde::Serializer>(
    q: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&to_pq(q)),
        None => s.serialize_none(),
    }
}
