//! Spectrum of the finite evolution block at `alpha = P/(4Q)`, `theta = 0`.

mod eigen;
mod matrix;
mod verify;

pub use eigen::{eigenpairs, min_pairwise_distance, principal_arg, Eigensystem, SpectrumRecord};
pub use matrix::{build_cw_matrix, build_wc_matrix, CwMatrix, DenseMatrix, ParityDiagonal};
pub use verify::{
    check_p1, check_p6, check_wc_cw, multiset_distance, p6_similarity_deviation, spectrum,
    verify_p1, verify_p2_p3, verify_p4, verify_p5, verify_p6, wc_cw_similarity, Property,
    PropertyReport, PropertySummary, SuiteReport, SymmetrySuite, Tolerances,
};
