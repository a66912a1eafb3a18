use thiserror::Error;

/// Errors raised by the walk and spectral routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("integer overflow in exact fraction arithmetic")]
    Overflow,

    #[error("invalid alpha {p}/(4*{q}): {reason}")]
    InvalidAlpha { p: i64, q: i64, reason: &'static str },

    #[error("invalid parameter: {0}")]
    Validation(String),

    #[error("eigensolver failed for alpha = {p}/(4*{q}): {reason}")]
    Computation { p: i64, q: i64, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for errors caused by bad input rather than a numerical failure.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Computation { .. })
    }
}
