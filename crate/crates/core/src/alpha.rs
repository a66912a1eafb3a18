use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fraction::Fraction;

/// A rational frequency `alpha = p / (4q)` with `p` odd, `gcd(p, q) = 1`
/// and `0 < p < 4q`.
///
/// These are exactly the frequencies for which the walk has reflection
/// points at `n = ±q` and a finite `4q`-dimensional evolution block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaPQ {
    q: i64,
    p: i64,
}

impl AlphaPQ {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        let invalid = |reason| Err(Error::InvalidAlpha { p, q, reason });
        if q < 1 {
            return invalid("Q must be positive");
        }
        if p.is_even() {
            return invalid("P must be odd");
        }
        if p <= 0 || p >= 4 * q {
            return invalid("P must satisfy 0 < P < 4Q");
        }
        if p.gcd(&q) != 1 {
            return invalid("P and Q must be coprime");
        }
        Ok(AlphaPQ { q, p })
    }

    /// Interprets a rational literal `a/b` as `P/(4Q)` without reducing it
    /// first, so `2/8` is read as `P = 2, Q = 2` and rejected.
    pub fn from_literal(num: i64, den: i64) -> Result<Self> {
        if den <= 0 || den % 4 != 0 {
            return Err(Error::Validation(format!(
                "alpha {num}/{den}: denominator must be a positive multiple of 4"
            )));
        }
        AlphaPQ::new(num, den / 4)
    }

    /// Parses `"a/b"` as a `P/(4Q)` literal.
    pub fn parse_literal(s: &str) -> Result<Self> {
        let bad = || Error::Validation(format!("alpha {s:?} is not a rational literal P/(4Q)"));
        let (n, d) = s.trim().split_once('/').ok_or_else(bad)?;
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        AlphaPQ::from_literal(n, d)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Matrix order of the finite evolution block.
    pub fn order(&self) -> usize {
        4 * self.q as usize
    }

    pub fn to_fraction(&self) -> Fraction {
        Fraction::new(self.p, 4 * self.q).expect("nonzero denominator")
    }

    pub fn to_f64(&self) -> f64 {
        self.p as f64 / (4 * self.q) as f64
    }

    /// `1 - alpha`, i.e. `(4Q - P)/(4Q)`.
    pub fn reflected(&self) -> AlphaPQ {
        AlphaPQ::new(4 * self.q - self.p, self.q).expect("1 - alpha is admissible")
    }

    /// `alpha + 1/2` taken modulo 1, i.e. `((P + 2Q) mod 4Q)/(4Q)`.
    ///
    /// `Q` is kept fixed; `gcd(P + 2Q, Q) = gcd(P, Q) = 1` and `P + 2Q`
    /// stays odd, so the result is always admissible.
    pub fn half_shifted(&self) -> AlphaPQ {
        let shifted = (self.p + 2 * self.q) % (4 * self.q);
        debug_assert_eq!(shifted.gcd(&self.q), 1);
        AlphaPQ::new(shifted, self.q).expect("alpha + 1/2 is admissible")
    }

    /// Sign `(-1)^((P+1)/2)` carried by the boundary rows of the block.
    pub fn boundary_sign(&self) -> i64 {
        if ((self.p + 1) / 2).is_even() {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for AlphaPQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, 4 * self.q)
    }
}
