use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::rational::{to_pq, Rational};

/// An interval `[lo, hi]` or `[lo, hi)` of rationals; exact when it is a
/// single point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    lo: Rational,
    hi: Rational,
    hi_inclusive: bool,
}

impl Bracket {
    pub fn exact(v: Rational) -> Self {
        Bracket {
            lo: v.clone(),
            hi: v,
            hi_inclusive: true,
        }
    }

    pub fn half_open(lo: Rational, hi: Rational) -> Self {
        assert!(lo < hi, "empty half-open bracket");
        Bracket {
            lo,
            hi,
            hi_inclusive: false,
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty closed bracket");
        Bracket {
            lo,
            hi,
            hi_inclusive: true,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn hi_inclusive(&self) -> bool {
        self.hi_inclusive
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        (self.hi_inclusive && self.lo == self.hi).then_some(&self.lo)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        *x >= self.lo && (*x < self.hi || (self.hi_inclusive && *x == self.hi))
    }

    /// Everything in `self` is `<= bound` (or `< bound` when `strict`).
    pub fn below(&self, bound: &Rational, strict: bool) -> bool {
        if strict {
            self.hi < *bound || (!self.hi_inclusive && self.hi == *bound)
        } else {
            self.hi <= *bound
        }
    }

    /// Intersection, or `None` if empty.
    pub fn intersect(&self, other: &Bracket) -> Option<Bracket> {
        let lo = (&self.lo).max(&other.lo).clone();
        let (hi, hi_inclusive) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_inclusive),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.hi_inclusive),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_inclusive && other.hi_inclusive),
        };
        if lo < hi || (lo == hi && hi_inclusive) {
            Some(Bracket { lo, hi, hi_inclusive })
        } else {
            None
        }
    }

    /// Raise the lower end to `lo` if that is larger.
    pub fn raise_lo(&self, lo: &Rational) -> Option<Bracket> {
        self.intersect(&Bracket::closed(lo.clone(), self.hi.clone().max(lo.clone())))
    }

    /// Cap the upper end at `hi` (exclusive when `strict`).
    pub fn cap_hi(&self, hi: &Rational, strict: bool) -> Option<Bracket> {
        let lo = self.lo.clone().min(hi.clone());
        let cap = Bracket {
            lo,
            hi: hi.clone(),
            hi_inclusive: !strict,
        };
        self.intersect(&cap)
    }
}

/// `4/3`, `[4/3, 17/12)` or `[1, 3/2]`.
impl std::fmt::Display for Bracket {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.exact_value() {
            Some(v) => f.write_str(&to_pq(v)),
            None => {
                let close = if self.hi_inclusive { ']' } else { ')' };
                write!(f, "[{}, {}{close}", to_pq(&self.lo), to_pq(&self.hi))
            }
        }
    }
}

impl Serialize for Bracket {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if let Some(v) = self.exact_value() {
            let mut map = s.serialize_map(Some(1))?;
            map.serialize_entry("exact", &to_pq(v))?;
            return map.end();
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("lo", &to_pq(&self.lo))?;
        let key = if self.hi_inclusive { "hi_inclusive" } else { "hi_exclusive" };
        map.serialize_entry(key, &to_pq(&self.hi))?;
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn intersections() {
        let a = Bracket::half_open(frac(4, 3), frac(17, 12));
        let b = Bracket::closed(int(1), frac(4, 3));
        assert_eq!(a.intersect(&b), Some(Bracket::exact(frac(4, 3))));
        let c = Bracket::half_open(int(1), frac(4, 3));
        assert_eq!(a.intersect(&c), None);
        assert_eq!(a.to_string(), "[4/3, 17/12)");
        assert_eq!(b.to_string(), "[1/1, 4/3]");
        assert_eq!(a.cap_hi(&frac(4, 3), false), Some(Bracket::exact(frac(4, 3))));
        assert_eq!(a.raise_lo(&frac(5, 4)), Some(a.clone()));
        assert!(a.below(&frac(17, 12), true));
        assert!(!a.contains(&frac(17, 12)));
    }

    #[test]
    fn json_shapes() {
        let j = |b: &Bracket| serde_json::to_string(b).unwrap();
        assert_eq!(j(&Bracket::exact(int(2))), r#"{"exact":"2/1"}"#);
        assert_eq!(
            j(&Bracket::half_open(frac(4, 3), frac(17, 12))),
            r#"{"lo":"4/3","hi_exclusive":"17/12"}"#
        );
        assert_eq!(j(&Bracket::closed(int(1), frac(14, 13))), r#"{"lo":"1/1","hi_inclusive":"14/13"}"#);
    }
}
