//! Dense complex eigendecomposition of the evolution block.
//!
//! The decomposition itself is delegated to `faer`; every eigenpair is then
//! checked against the original matrix so the reported residuals do not
//! depend on trusting the solver.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{self, ComputeEigenvectors};
use faer::{Mat, Par};
use num_complex::Complex64;

use crate::alpha::AlphaPQ;
use crate::error::{Error, Result};
use crate::spectral::matrix::{CwMatrix, DenseMatrix};

/// Principal argument in `(-π, π]`.
pub fn principal_arg(z: Complex64) -> f64 {
    let a = z.im.atan2(z.re);
    if a <= -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        a
    }
}

/// Eigenvalues of one block, sorted by principal argument, with QA data.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRecord {
    pub alpha: AlphaPQ,
    pub eigenvalues: Vec<Complex64>,
    /// `‖M v − λ v‖` for the unit eigenvector paired with each eigenvalue.
    pub residuals: Vec<f64>,
    /// Smallest distance between two eigenvalues.
    pub min_gap: f64,
}

impl SpectrumRecord {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Largest `| |λ| − 1 |`.
    pub fn max_modulus_deviation(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|z| (z.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn arguments(&self) -> Vec<f64> {
        self.eigenvalues.iter().copied().map(principal_arg).collect()
    }
}

/// Eigenvalues together with their unit eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub record: SpectrumRecord,
    /// `vectors[k]` belongs to `record.eigenvalues[k]`.
    pub vectors: Vec<Vec<Complex64>>,
}

pub fn min_pairwise_distance(values: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            best = best.min((a - b).norm());
        }
    }
    best
}

fn solve(m: &DenseMatrix) -> std::result::Result<(Vec<Complex64>, Vec<Vec<Complex64>>), evd::EvdError> {
    let n = m.order();
    let a = Mat::<Complex64>::from_fn(n, n, |i, j| m[(i, j)]);
    let mut s = faer::diag::Diag::<Complex64>::zeros(n);
    let mut u = Mat::<Complex64>::zeros(n, n);
    let par = Par::Seq;
    let mut buf = MemBuffer::new(evd::evd_scratch::<Complex64>(
        n,
        ComputeEigenvectors::No,
        ComputeEigenvectors::Yes,
        par,
        Default::default(),
    ));
    evd::evd_cplx(
        a.as_ref(),
        s.as_mut(),
        None,
        Some(u.as_mut()),
        par,
        MemStack::new(&mut buf),
        Default::default(),
    )?;
    let values = (0..n).map(|k| s[k]).collect();
    let vectors = (0..n).map(|k| (0..n).map(|i| u[(i, k)]).collect()).collect();
    Ok((values, vectors))
}

fn residual(m: &DenseMatrix, lambda: Complex64, v: &[Complex64]) -> f64 {
    let mv = m.mul_vec(v);
    mv.iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// All eigenpairs of a block, sorted by principal argument.
pub fn eigenpairs(block: &CwMatrix) -> Result<Eigensystem> {
    let alpha = block.alpha();
    let m = block.matrix();
    let fail = |reason: String| Error::Computation {
        p: alpha.p(),
        q: alpha.q(),
        reason,
    };
    let (values, vectors) = solve(m).map_err(|e| fail(format!("{e:?}")))?;
    if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(fail("non-finite eigenvalue".into()));
    }

    let mut pairs: Vec<(Complex64, Vec<Complex64>)> = values
        .into_iter()
        .zip(vectors)
        .map(|(lambda, mut v)| {
            let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
            (lambda, v)
        })
        .collect();
    pairs.sort_by(|a, b| principal_arg(a.0).total_cmp(&principal_arg(b.0)));

    let eigenvalues: Vec<Complex64> = pairs.iter().map(|p| p.0).collect();
    let residuals = pairs.iter().map(|(l, v)| residual(m, *l, v)).collect();
    let min_gap = min_pairwise_distance(&eigenvalues);
    Ok(Eigensystem {
        record: SpectrumRecord {
            alpha,
            eigenvalues,
            residuals,
            min_gap,
        },
        vectors: pairs.into_iter().map(|p| p.1).collect(),
    })
}
