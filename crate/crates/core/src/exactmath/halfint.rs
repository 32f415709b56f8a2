use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use super::Rational;

/// A number in (1/2)Z, stored as its double.
///
/// Arithmetic panics on i64 overflow instead of wrapping; every parameter the
/// crate handles is many orders of magnitude below that bound.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

pub type HalfIntTriple = [HalfInt; 3];

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The value as an integer, if it is one.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.twice), BigInt::from(2))
    }

    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    /// Multiply by an integer.
    pub fn scale(self, k: i64) -> Self {
        HalfInt { twice: self.twice.checked_mul(k).expect("HalfInt overflow") }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice.checked_add(o.twice).expect("HalfInt overflow") }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice.checked_sub(o.twice).expect("HalfInt overflow") }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseHalfIntError {
    #[error("empty half-integer")]
    Empty,
    #[error("`{0}` is not an integer or a fraction p/2")]
    Malformed(String),
    #[error("`{0}` has a denominator other than 1 or 2")]
    BadDenominator(String),
}

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    /// Accepts "n", "p/2" and "p/1". Decimal notation is rejected on purpose.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseHalfIntError::Empty);
        }
        let bad = || ParseHalfIntError::Malformed(s.to_string());
        match s.split_once('/') {
            None => s.parse::<i64>().map(HalfInt::from_int).map_err(|_| bad()),
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                match q.trim().parse::<i64>().map_err(|_| bad())? {
                    1 => Ok(HalfInt::from_int(p)),
                    2 => Ok(HalfInt::from_twice(p)),
                    _ => Err(ParseHalfIntError::BadDenominator(s.to_string())),
                }
            }
        }
    }
}
