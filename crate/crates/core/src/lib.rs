//! Discrete-time quantum walks on the line with position-dependent
//! rotation coins `C_n = R(2π(alpha n + theta))`.
//!
//! - [`fraction`], [`alpha`], [`coin`]: exact-angle coin construction.
//! - [`walk`]: state evolution, distributions, confinement.
//! - [`spectral`]: the finite evolution block at `alpha = P/(4Q)` and its
//!   spectral symmetries.
//! - [`butterfly`]: the eigenvalue-argument dataset over all admissible
//!   `alpha` up to a cutoff.

pub mod alpha;
pub mod butterfly;
pub mod coin;
pub mod error;
pub mod fraction;
pub mod spectral;
pub mod walk;

pub use alpha::AlphaPQ;
pub use coin::{CoinMatrix, GeneralCoin};
pub use error::{Error, Result};
pub use fraction::Fraction;
pub use walk::{Distribution, StepOrder, WalkParams, WalkerState};
