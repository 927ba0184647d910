//! Exact positive rational weights.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedSub, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational weight of a vertex or an edge.
///
/// The newtype does not itself enforce positivity: intermediate residuals
/// during edge-weight derivation may be zero or negative. Constructors that
/// build types and trees reject non-positive values.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(Ratio<i64>);

impl Weight {
    pub const ONE: Weight = Weight(Ratio::new_raw(1, 1));

    pub fn integer(n: i64) -> Self {
        Weight(Ratio::from_integer(n))
    }

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Weight(Ratio::new(num, den))
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_positive(self) -> bool {
        self.0 > Ratio::zero()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    pub fn checked_add(self, other: Weight) -> Option<Weight> {
        self.0.checked_add(&other.0).map(Weight)
    }

    pub fn checked_sub(self, other: Weight) -> Option<Weight> {
        self.0.checked_sub(&other.0).map(Weight)
    }

    /// `self / k` for a positive integer `k`.
    pub fn div_int(self, k: i64) -> Weight {
        Weight(self.0 / k)
    }

    /// `self * k` for an integer `k`.
    pub fn mul_int(self, k: i64) -> Weight {
        Weight(self.0 * k)
    }

    /// Largest rational `g` such that every weight is a positive integer
    /// multiple of `g`. Every edge weight of a tree over these vertex weights
    /// is an integer combination of them, hence also a multiple of `g`.
    pub fn gcd_of<I: IntoIterator<Item = Weight>>(weights: I) -> Option<Weight> {
        weights.into_iter().fold(None, |acc, w| match acc {
            None => Some(w),
            Some(g) => Some(Weight::gcd(g, w)),
        })
    }

    fn gcd(a: Weight, b: Weight) -> Weight {
        let l = a.denom().lcm(&b.denom());
        let an = a.numer() * (l / a.denom());
        let bn = b.numer() * (l / b.denom());
        Weight::new(an.gcd(&bn), l)
    }

    /// Returns `Some(q)` when `self == q * unit` for a non-negative integer `q`.
    pub fn multiple_of(self, unit: Weight) -> Option<i64> {
        let q = self.0 / unit.0;
        q.is_integer().then(|| q.to_integer())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight(self.0 - rhs.0)
    }
}

impl Mul for Weight {
    type Output = Weight;
    fn mul(self, rhs: Weight) -> Weight {
        Weight(self.0 * rhs.0)
    }
}

impl Div for Weight {
    type Output = Weight;
    fn div(self, rhs: Weight) -> Weight {
        Weight(self.0 / rhs.0)
    }
}

impl std::iter::Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::default(), |a, b| a + b)
    }
}

impl From<i64> for Weight {
    fn from(n: i64) -> Self {
        Weight::integer(n)
    }
}

impl From<Ratio<i64>> for Weight {
    fn from(r: Ratio<i64>) -> Self {
        Weight(r)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts `"n"` or `"p/q"` with decimal integers.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::BadWeight(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<i64>().map(Weight::integer).map_err(|_| bad()),
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(Weight::new(p, q))
            }
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("7".parse::<Weight>().unwrap(), Weight::integer(7));
        assert_eq!("6/4".parse::<Weight>().unwrap(), Weight::new(3, 2));
        assert_eq!(Weight::new(3, 2).to_string(), "3/2");
        assert_eq!(Weight::integer(12).to_string(), "12");
        assert!("1/0".parse::<Weight>().is_err());
        assert!("x".parse::<Weight>().is_err());
    }

    #[test]
    fn gcd_of_rationals() {
        let g = Weight::gcd_of([Weight::new(1, 2), Weight::new(3, 4)]).unwrap();
        assert_eq!(g, Weight::new(1, 4));
        let g = Weight::gcd_of([6, 9, 15].map(Weight::integer)).unwrap();
        assert_eq!(g, Weight::integer(3));
        assert_eq!(Weight::integer(6).multiple_of(Weight::integer(3)), Some(2));
        assert_eq!(Weight::integer(7).multiple_of(Weight::integer(3)), None);
    }
}
