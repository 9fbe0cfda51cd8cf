//! Exact costs: rationals extended with a single positive infinity.
//!
//! Arithmetic follows the conventions of valued constraint satisfaction:
//! `a + ∞ = ∞` for every `a`, `0 · ∞ = ∞ · 0 = 0`, and `r · ∞ = ∞` for
//! `r > 0`. Every finite value is strictly below `∞`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// A value in `ℚ ∪ {∞}`.
///
/// Finite values are kept in lowest terms with a positive denominator (this
/// is maintained by [`BigRational`] itself).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cost {
    Finite(BigRational),
    Infinite,
}

impl Cost {
    pub fn zero() -> Cost {
        Cost::Finite(BigRational::zero())
    }

    pub fn one() -> Cost {
        Cost::Finite(BigRational::one())
    }

    pub fn int(n: i64) -> Cost {
        Cost::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`, reduced. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Cost {
        Cost::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn inf() -> Cost {
        Cost::Infinite
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Cost::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Cost::Finite(r) if r.is_zero())
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Cost::Finite(r) => Some(r),
            Cost::Infinite => None,
        }
    }

    /// Numerator and denominator of a finite cost.
    pub fn parts(&self) -> Option<(&BigInt, &BigInt)> {
        self.finite().map(|r| (r.numer(), r.denom()))
    }

    /// Product with a rational factor. `0 · ∞ = 0`; a negative factor times
    /// `∞` has no meaning and yields `None`.
    pub fn checked_scale(&self, factor: &BigRational) -> Option<Cost> {
        match self {
            Cost::Finite(r) => Some(Cost::Finite(r * factor)),
            Cost::Infinite if factor.is_zero() => Some(Cost::zero()),
            Cost::Infinite if factor.is_positive() => Some(Cost::Infinite),
            Cost::Infinite => None,
        }
    }

    /// `self / 2`, used for averaging two inputs of a binary operation.
    pub fn half(&self) -> Cost {
        match self {
            Cost::Finite(r) => Cost::Finite(r / BigInt::from(2)),
            Cost::Infinite => Cost::Infinite,
        }
    }

    /// `self + s` for a finite shift.
    pub fn shifted(&self, s: &BigRational) -> Cost {
        match self {
            Cost::Finite(r) => Cost::Finite(r + s),
            Cost::Infinite => Cost::Infinite,
        }
    }
}

impl From<BigRational> for Cost {
    fn from(r: BigRational) -> Self {
        Cost::Finite(r)
    }
}

impl From<i64> for Cost {
    fn from(n: i64) -> Self {
        Cost::int(n)
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => a.cmp(b),
            (Cost::Finite(_), Cost::Infinite) => Ordering::Less,
            (Cost::Infinite, Cost::Finite(_)) => Ordering::Greater,
            (Cost::Infinite, Cost::Infinite) => Ordering::Equal,
        }
    }
}

impl Add<&Cost> for &Cost {
    type Output = Cost;

    fn add(self, rhs: &Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::Infinite,
        }
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        &self + &rhs
    }
}

impl AddAssign<&Cost> for Cost {
    fn add_assign(&mut self, rhs: &Cost) {
        match (&mut *self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => *a += b,
            _ => *self = Cost::Infinite,
        }
    }
}

impl<'a> Sum<&'a Cost> for Cost {
    fn sum<I: Iterator<Item = &'a Cost>>(iter: I) -> Cost {
        let mut acc = Cost::zero();
        for c in iter {
            acc += c;
            if acc.is_infinite() {
                break;
            }
        }
        acc
    }
}

impl Sum<Cost> for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        let mut acc = Cost::zero();
        for c in iter {
            acc += &c;
        }
        acc
    }
}

/// Multiplication with `0 · ∞ = ∞ · 0 = 0`.
///
/// Panics when a negative finite value meets `∞`.
impl Mul<&Cost> for &Cost {
    type Output = Cost;

    fn mul(self, rhs: &Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a * b),
            (Cost::Finite(a), Cost::Infinite) | (Cost::Infinite, Cost::Finite(a)) => Cost::Infinite
                .checked_scale(a)
                .expect("negative value multiplied by infinity"),
            (Cost::Infinite, Cost::Infinite) => Cost::Infinite,
        }
    }
}

impl Mul for Cost {
    type Output = Cost;

    fn mul(self, rhs: Cost) -> Cost {
        &self * &rhs
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Infinite => f.write_str("inf"),
            Cost::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Cost::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Cost {
    type Err = Error;

    /// Accepts `inf` (or `∞`), an integer, or `p/q` with `q ≠ 0`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Cost::Infinite);
        }
        let bad = || Error::InvalidCost(s.to_string());
        match t.split_once('/') {
            None => Ok(Cost::Finite(BigRational::from_integer(
                t.parse::<BigInt>().map_err(|_| bad())?,
            ))),
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Cost::Finite(BigRational::new(p, q)))
            }
        }
    }
}

/// Parses a finite rational such as `-3/2`. `inf` is rejected.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    match s.parse::<Cost>()? {
        Cost::Finite(r) => Ok(r),
        Cost::Infinite => Err(Error::InvalidCost(s.to_string())),
    }
}
