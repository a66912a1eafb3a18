use num_complex::Complex64;

use crate::alpha::AlphaPQ;
use crate::coin::{coin_angle, CoinMatrix};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::walk::{Chirality, StepOrder};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        (0..n).for_each(|i| m[(i, i)] = Complex64::new(1.0, 0.0));
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> DenseMatrix {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    /// Largest entry of `|M^† M - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        self.adjoint()
            .mul(self)
            .max_abs_diff(&DenseMatrix::identity(self.n))
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest number of nonzero entries in any row or column.
    pub fn max_nonzeros_per_line(&self) -> usize {
        let n = self.n;
        let rows = (0..n).map(|i| (0..n).filter(|&j| self[(i, j)] != ZERO).count());
        let cols = (0..n).map(|j| (0..n).filter(|&i| self[(i, j)] != ZERO).count());
        rows.chain(cols).max().unwrap_or(0)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// The `4Q`-dimensional evolution block between the reflecting sites
/// `-Q` and `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct CwMatrix {
    alpha: AlphaPQ,
    order: StepOrder,
    basis: Vec<(i64, Chirality)>,
    matrix: DenseMatrix,
}

impl CwMatrix {
    pub fn alpha(&self) -> AlphaPQ {
        self.alpha
    }

    pub fn order(&self) -> StepOrder {
        self.order
    }

    /// Component labels `(site, chirality)` in row/column order.
    pub fn basis(&self) -> &[(i64, Chirality)] {
        &self.basis
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.order()
    }

    pub fn index_of(&self, site: i64, chirality: Chirality) -> Option<usize> {
        self.basis.iter().position(|&b| b == (site, chirality))
    }

    /// Replaces the entries, keeping the labels. Used for fault injection.
    pub fn with_matrix(mut self, matrix: DenseMatrix) -> Self {
        assert_eq!(matrix.order(), self.dim());
        self.matrix = matrix;
        self
    }
}

fn site_coin(alpha: AlphaPQ, n: i64) -> Result<CoinMatrix> {
    Ok(CoinMatrix::rotation(coin_angle(alpha.to_fraction(), Fraction::ZERO, n)?))
}

/// Basis `(-Q;R), (-Q+1;L), (-Q+1;R), ..., (Q-1;L), (Q-1;R), (Q;L)`.
fn cw_basis(q: i64) -> Vec<(i64, Chirality)> {
    let mut basis = vec![(-q, Chirality::R)];
    for n in -q + 1..q {
        basis.push((n, Chirality::L));
        basis.push((n, Chirality::R));
    }
    basis.push((q, Chirality::L));
    basis
}

/// Basis `(-Q;L), (-Q+1;L), (-Q+1;R), ..., (Q-1;L), (Q-1;R), (Q;R)`.
fn wc_basis(q: i64) -> Vec<(i64, Chirality)> {
    let mut basis = cw_basis(q);
    basis[0] = (-q, Chirality::L);
    *basis.last_mut().unwrap() = (q, Chirality::R);
    basis
}

/// Shift-then-coin block at `alpha = P/(4Q)`, `theta = 0`.
///
/// Boundary rows carry the factor `(-1)^((P+1)/2)`:
/// `λψ(-Q;R) = s ψ(-Q+1;L)` and `λψ(Q;L) = s ψ(Q-1;R)`. Interior sites
/// `-Q < n < Q` apply the site coin to `(ψ(n+1;L), ψ(n-1;R))`.
pub fn build_cw_matrix(alpha: AlphaPQ) -> Result<CwMatrix> {
    let q = alpha.q();
    let dim = alpha.order();
    // position of (n, L); (n, R) follows it. (Q, L) lands on the last slot.
    let left = |n: i64| (2 * (n + q) - 1) as usize;
    let right = |n: i64| if n == -q { 0 } else { left(n) + 1 };

    let sign = Complex64::new(alpha.boundary_sign() as f64, 0.0);
    let mut m = DenseMatrix::zeros(dim);
    m[(0, left(-q + 1))] = sign;
    m[(dim - 1, right(q - 1))] = sign;
    for n in -q + 1..q {
        let coin = site_coin(alpha, n)?;
        let (from_l, from_r) = (left(n + 1), right(n - 1));
        for (row, out) in [(left(n), 0), (right(n), 1)] {
            m[(row, from_l)] += coin.entry(out, 0);
            m[(row, from_r)] += coin.entry(out, 1);
        }
    }
    Ok(CwMatrix {
        alpha,
        order: StepOrder::CW,
        basis: cw_basis(q),
        matrix: m,
    })
}

/// Coin-then-shift block at `alpha = P/(4Q)`, `theta = 0`, built column by
/// column from the site coins. Amplitude leaving the block would mean the
/// boundary sites are not reflecting.
pub fn build_wc_matrix(alpha: AlphaPQ) -> Result<CwMatrix> {
    let basis = wc_basis(alpha.q());
    let dim = basis.len();
    let index = |b: (i64, Chirality)| basis.iter().position(|&x| x == b);
    let mut m = DenseMatrix::zeros(dim);
    for (col, &(site, chi)) in basis.iter().enumerate() {
        let coin = site_coin(alpha, site)?;
        let targets = [(site - 1, Chirality::L), (site + 1, Chirality::R)];
        for (out, target) in targets.into_iter().enumerate() {
            let value = coin.entry(out, chi.index());
            match index(target) {
                Some(row) => m[(row, col)] += value,
                None if value == ZERO => {}
                None => {
                    return Err(Error::Computation {
                        p: alpha.p(),
                        q: alpha.q(),
                        reason: format!("amplitude leaks out of the block at site {}", target.0),
                    })
                }
            }
        }
    }
    Ok(CwMatrix {
        alpha,
        order: StepOrder::WC,
        basis,
        matrix: m,
    })
}

/// Diagonal phase `i` on odd sites and `1` on even sites.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityDiagonal {
    diag: Vec<Complex64>,
}

impl ParityDiagonal {
    pub fn for_basis(basis: &[(i64, Chirality)]) -> Self {
        ParityDiagonal {
            diag: basis
                .iter()
                .map(|&(n, _)| {
                    if n.rem_euclid(2) == 1 {
                        Complex64::i()
                    } else {
                        Complex64::new(1.0, 0.0)
                    }
                })
                .collect(),
        }
    }

    pub fn diagonal(&self) -> &[Complex64] {
        &self.diag
    }

    pub fn to_matrix(&self) -> DenseMatrix {
        let n = self.diag.len();
        DenseMatrix::from_fn(n, |i, j| if i == j { self.diag[i] } else { ZERO })
    }

    /// `factor · D M D⁻¹`
    pub fn conjugate(&self, m: &DenseMatrix, factor: Complex64) -> DenseMatrix {
        assert_eq!(m.order(), self.diag.len());
        DenseMatrix::from_fn(m.order(), |i, j| {
            factor * self.diag[i] * m[(i, j)] * self.diag[j].conj()
        })
    }
}
