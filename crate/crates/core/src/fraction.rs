//! Exact rational numbers for coin angles.
//!
//! Angles are kept as fractions of a full turn so that reflection points,
//! where the coin's diagonal vanishes, are represented without rounding.
//! Intermediate products are formed in `i128` and narrowed back with an
//! overflow check.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A reduced rational number `num/den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: i64,
    den: i64,
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };
    pub const HALF: Fraction = Fraction { num: 1, den: 2 };

    /// Builds the canonical representative of `num/den`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        Self::from_wide(num as i128, den as i128)
    }

    pub fn integer(n: i64) -> Self {
        Fraction { num: n, den: 1 }
    }

    fn from_wide(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(Fraction {
            num: narrow(num)?,
            den: narrow(den)?,
        })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn checked_add(self, rhs: Fraction) -> Result<Fraction> {
        let num = self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128;
        Self::from_wide(num, self.den as i128 * rhs.den as i128)
    }

    pub fn checked_sub(self, rhs: Fraction) -> Result<Fraction> {
        self.checked_add(Fraction {
            num: rhs.num.checked_neg().ok_or(Error::Overflow)?,
            den: rhs.den,
        })
    }

    pub fn checked_mul(self, rhs: Fraction) -> Result<Fraction> {
        Self::from_wide(
            self.num as i128 * rhs.num as i128,
            self.den as i128 * rhs.den as i128,
        )
    }

    pub fn checked_mul_int(self, n: i64) -> Result<Fraction> {
        Self::from_wide(self.num as i128 * n as i128, self.den as i128)
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.num, &self.den)
    }

    /// The representative of `self` modulo 1, in `[0, 1)`.
    pub fn mod_one(&self) -> Fraction {
        // den > 0, so mod_floor is in [0, den) and the result stays reduced.
        Fraction {
            num: self.num.mod_floor(&self.den),
            den: self.den,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for Fraction {
    fn default() -> Self {
        Fraction::ZERO
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Fraction {
    type Err = Error;

    /// Accepts `"a/b"` or a bare integer `"a"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Validation(format!("not a rational literal: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Fraction::new(n, d)
            }
            None => s.parse().map(Fraction::integer).map_err(|_| bad()),
        }
    }
}
