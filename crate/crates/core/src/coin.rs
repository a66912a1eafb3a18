//! Per-site coin operators.
//!
//! The rotation coin at site `n` turns by the angle `2π r` with
//! `r = (alpha * n + theta) mod 1`. Angles are exact fractions of a turn;
//! quarter turns produce exact `0`/`±1` entries and the trigonometry for
//! every other angle is evaluated in the first quadrant and rotated into
//! place, so `r` and `r + 1/2` give exactly negated matrices.

use std::fmt;

use num_complex::Complex64;

use crate::error::Result;
use crate::fraction::Fraction;

/// Coin angle in turns: `(alpha * n + theta) mod 1`.
pub fn coin_angle(alpha: Fraction, theta: Fraction, n: i64) -> Result<Fraction> {
    Ok(alpha.checked_mul_int(n)?.checked_add(theta)?.mod_one())
}

/// `(cos 2πr, sin 2πr)` for an angle `r` given in turns.
pub fn turn_cos_sin(r: Fraction) -> (f64, f64) {
    let r = r.mod_one();
    let (num, den) = (r.num() as i128, r.den() as i128);
    // r = k/4 + rest/(4 den), 0 <= rest < den
    let k = (4 * num) / den;
    let rest = 4 * num - k * den;
    let (c, s) = if rest == 0 {
        (1.0, 0.0)
    } else {
        let x = std::f64::consts::TAU * (rest as f64 / (4 * den) as f64);
        (x.cos(), x.sin())
    };
    match k {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

/// True when the angle sits on a quarter turn `{0, 1/4, 1/2, 3/4}`.
pub fn is_quarter_turn(r: Fraction) -> bool {
    let r = r.mod_one();
    (4 * r.num()) % r.den() == 0
}

/// True when the coin at this angle has a vanishing diagonal (`cos = 0`).
pub fn is_reflecting(r: Fraction) -> bool {
    let r = r.mod_one();
    r == Fraction::new(1, 4).unwrap() || r == Fraction::new(3, 4).unwrap()
}

/// 2×2 complex coin in the `(L, R)` basis. Column `j` is the image of basis
/// state `j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix {
    m: [[Complex64; 2]; 2],
}

impl CoinMatrix {
    pub const IDENTITY: CoinMatrix = CoinMatrix {
        m: [
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ],
    };

    pub fn from_entries(m: [[Complex64; 2]; 2]) -> Self {
        CoinMatrix { m }
    }

    /// `[[cos, -sin], [sin, cos]]` at `2π r`.
    pub fn rotation(r: Fraction) -> Self {
        let (c, s) = turn_cos_sin(r);
        Self::rotation_from_cos_sin(c, s)
    }

    /// Same rotation for an angle given as a real number of turns.
    pub fn rotation_turns_f64(turns: f64) -> Self {
        let x = std::f64::consts::TAU * turns.rem_euclid(1.0);
        Self::rotation_from_cos_sin(x.cos(), x.sin())
    }

    fn rotation_from_cos_sin(c: f64, s: f64) -> Self {
        let re = |x: f64| Complex64::new(x, 0.0);
        CoinMatrix {
            m: [[re(c), re(-s)], [re(s), re(c)]],
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn determinant(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Largest entry of `|M^† M - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    acc += self.m[k][i].conj() * self.m[k][j];
                }
                if i == j {
                    acc -= 1.0;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut m = self.m;
        m.iter_mut().flatten().for_each(|x| *x *= factor);
        CoinMatrix { m }
    }

    pub fn max_abs_diff(&self, other: &CoinMatrix) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// One of the constraint relations a general coin must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinRelation {
    /// `|a|² + |c|² = 1`
    ColumnNorm,
    /// `a b̄ + c d̄ = 0`
    RowOrthogonality,
    /// `c = -Δ b̄`
    OffDiagonal,
    /// `d = Δ ā`
    Diagonal,
    /// `|Δ| = 1`
    UnitDeterminant,
}

impl fmt::Display for CoinRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoinRelation::ColumnNorm => "|a|^2 + |c|^2 = 1",
            CoinRelation::RowOrthogonality => "a conj(b) + c conj(d) = 0",
            CoinRelation::OffDiagonal => "c = -det conj(b)",
            CoinRelation::Diagonal => "d = det conj(a)",
            CoinRelation::UnitDeterminant => "|det| = 1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinViolation {
    pub relation: CoinRelation,
    pub residual: f64,
}

/// Result of checking a [`GeneralCoin`]. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CoinReport {
    pub violations: Vec<CoinViolation>,
}

impl CoinReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, relation: CoinRelation) -> Option<f64> {
        self.violations
            .iter()
            .find(|v| v.relation == relation)
            .map(|v| v.residual)
    }
}

/// Site coin with arbitrary coefficients: `|L⟩ ↦ a|L⟩ + c|R⟩`,
/// `|R⟩ ↦ b|L⟩ + d|R⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralCoin {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl GeneralCoin {
    pub const TOLERANCE: f64 = 1e-12;

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        GeneralCoin { a, b, c, d }
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Checks every constraint relation independently at [`Self::TOLERANCE`].
    pub fn validate(&self) -> CoinReport {
        self.validate_with(Self::TOLERANCE)
    }

    pub fn validate_with(&self, tol: f64) -> CoinReport {
        let GeneralCoin { a, b, c, d } = *self;
        let det = self.determinant();
        let residuals = [
            (CoinRelation::ColumnNorm, (a.norm_sqr() + c.norm_sqr() - 1.0).abs()),
            (CoinRelation::RowOrthogonality, (a * b.conj() + c * d.conj()).norm()),
            (CoinRelation::OffDiagonal, (c + det * b.conj()).norm()),
            (CoinRelation::Diagonal, (d - det * a.conj()).norm()),
            (CoinRelation::UnitDeterminant, (det.norm() - 1.0).abs()),
        ];
        CoinReport {
            violations: residuals
                .into_iter()
                .filter(|&(_, r)| !(r <= tol))
                .map(|(relation, residual)| CoinViolation { relation, residual })
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> CoinMatrix {
        CoinMatrix::from_entries([[self.a, self.b], [self.c, self.d]])
    }
}

impl From<CoinMatrix> for GeneralCoin {
    fn from(m: CoinMatrix) -> Self {
        GeneralCoin::new(m.entry(0, 0), m.entry(0, 1), m.entry(1, 0), m.entry(1, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn f(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn coin_angle_examples() {
        assert_eq!(coin_angle(f(1, 4), Fraction::ZERO, 0).unwrap(), Fraction::ZERO);
        assert_eq!(coin_angle(f(1, 4), Fraction::ZERO, 1).unwrap(), f(1, 4));
        // 2/3 + 1/12 = 9/12
        assert_eq!(coin_angle(f(1, 3), f(1, 12), 2).unwrap(), f(3, 4));
        assert_eq!(coin_angle(f(1, 4), Fraction::ZERO, -1).unwrap(), f(3, 4));
    }

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(CoinMatrix::rotation(Fraction::ZERO), CoinMatrix::IDENTITY);
        let quarter = CoinMatrix::rotation(f(1, 4));
        assert_eq!(
            *quarter.entries(),
            [[re(0.0), re(-1.0)], [re(1.0), re(0.0)]]
        );
        assert_eq!(
            *CoinMatrix::rotation(f(1, 2)).entries(),
            [[re(-1.0), re(0.0)], [re(0.0), re(-1.0)]]
        );
        assert_eq!(
            *CoinMatrix::rotation(f(3, 4)).entries(),
            [[re(0.0), re(1.0)], [re(-1.0), re(0.0)]]
        );
        for r in [Fraction::ZERO, f(1, 4), f(1, 2), f(3, 4)] {
            assert!(is_quarter_turn(r));
            assert_eq!(CoinMatrix::rotation(r).unitarity_deviation(), 0.0);
        }
        assert!(!is_quarter_turn(f(1, 8)));
    }

    #[test]
    fn eighth_turn_matches_analytic_value() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = CoinMatrix::rotation(f(1, 8));
        let expected = CoinMatrix::from_entries([[re(h), re(-h)], [re(h), re(h)]]);
        assert!(m.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn reflecting_angles() {
        assert!(is_reflecting(f(1, 4)));
        assert!(is_reflecting(f(3, 4)));
        assert!(is_reflecting(f(-1, 4)));
        assert!(!is_reflecting(Fraction::ZERO));
        assert!(!is_reflecting(f(1, 12)));
    }

    #[test]
    fn general_coin_examples() {
        let (c, s) = turn_cos_sin(f(1, 7));
        let rot = GeneralCoin::new(re(c), re(-s), re(s), re(c));
        assert!(rot.validate().is_ok());

        let id = GeneralCoin::new(re(1.0), re(0.0), re(0.0), re(1.0));
        assert!(id.validate().is_ok());

        let bad = GeneralCoin::new(re(1.0), re(0.0), re(1.0), re(0.0));
        let report = bad.validate();
        assert!(!report.is_ok());
        assert_abs_diff_eq!(report.violated(CoinRelation::ColumnNorm).unwrap(), 1.0);
    }

    #[test]
    fn general_coin_reports_each_relation() {
        // a unitary with det = i: [[1, 0], [0, i]]
        let phase = GeneralCoin::new(re(1.0), re(0.0), re(0.0), Complex64::i());
        assert!(phase.validate().is_ok());
        // scaled identity breaks norms and the determinant but not orthogonality
        let scaled = GeneralCoin::new(re(2.0), re(0.0), re(0.0), re(2.0));
        let report = scaled.validate();
        assert!(report.violated(CoinRelation::ColumnNorm).is_some());
        assert!(report.violated(CoinRelation::UnitDeterminant).is_some());
        assert!(report.violated(CoinRelation::Diagonal).is_some());
        assert!(report.violated(CoinRelation::RowOrthogonality).is_none());
        assert!(report.violated(CoinRelation::OffDiagonal).is_none());
    }

    #[test]
    fn nan_coefficients_are_violations() {
        let g = GeneralCoin::new(re(f64::NAN), re(0.0), re(0.0), re(1.0));
        assert!(!g.validate().is_ok());
    }

    fn angle() -> impl Strategy<Value = Fraction> {
        (1i64..=240).prop_flat_map(|d| (0..d).prop_map(move |n| Fraction::new(n, d).unwrap()))
    }

    fn unit_complex() -> impl Strategy<Value = Complex64> {
        (0.0..std::f64::consts::TAU).prop_map(|x| Complex64::from_polar(1.0, x))
    }

    proptest! {
        #[test]
        fn rotation_is_special_unitary(r in angle()) {
            let m = CoinMatrix::rotation(r);
            prop_assert!(m.unitarity_deviation() <= 1e-12);
            prop_assert!((m.determinant() - 1.0).norm() <= 1e-12);
            prop_assert!(GeneralCoin::from(m).validate().is_ok());
        }

        #[test]
        fn half_turn_negates_exactly(r in angle()) {
            let shifted = CoinMatrix::rotation(r.checked_add(Fraction::HALF).unwrap().mod_one());
            prop_assert_eq!(shifted, CoinMatrix::rotation(r).scale(re(-1.0)));
        }

        #[test]
        fn alpha_plus_half_is_parity_sign(p in 1i64..240, q in 1i64..=60, n in -500i64..500) {
            let alpha = Fraction::new(p, 4 * q).unwrap();
            let shifted = alpha.checked_add(Fraction::HALF).unwrap();
            let r = coin_angle(alpha, Fraction::ZERO, n).unwrap();
            let r2 = coin_angle(shifted, Fraction::ZERO, n).unwrap();
            let half_n = Fraction::new(n, 2).unwrap();
            prop_assert_eq!(r2, r.checked_add(half_n).unwrap().mod_one());
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert_eq!(CoinMatrix::rotation(r2), CoinMatrix::rotation(r).scale(re(sign)));
        }

        #[test]
        fn valid_general_coins_are_unitary(
            (u, v, delta) in (unit_complex(), unit_complex(), unit_complex()),
            t in 0.0..1.0f64,
        ) {
            let a = u * t.sqrt();
            let c = v * (1.0 - t).sqrt();
            // c = -Δ b̄ and |Δ| = 1 give b = -Δ c̄
            let coin = GeneralCoin::new(a, -delta * c.conj(), c, delta * a.conj());
            prop_assert!(coin.validate().is_ok(), "{:?}", coin.validate());
            prop_assert!(coin.to_matrix().unitarity_deviation() <= 1e-12);
        }
    }
}
