//! Symmetry checks on the spectra of the evolution block.
//!
//! At `alpha = P/(4Q)`, `theta = 0` the eigenvalues satisfy:
//!
//! - **P1** the spectrum at `alpha` equals the spectrum at `1 − alpha`;
//! - **P2** it is closed under complex conjugation;
//! - **P3** it is closed under negation;
//! - **P4** every eigenvalue is simple;
//! - **P5** it contains `1, −1, i, −i`;
//! - **P6** the spectrum at `alpha + 1/2` is `i` times the spectrum at
//!   `alpha`. Structurally, `CW(alpha + 1/2) = i D CW(alpha) D⁻¹` with `D`
//!   the [`ParityDiagonal`].
//!
//! The coin-then-shift and shift-then-coin blocks are similar, so their
//! spectra must also agree.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::alpha::AlphaPQ;
use crate::error::Result;
use crate::spectral::eigen::{eigenpairs, SpectrumRecord};
use crate::spectral::matrix::{build_cw_matrix, build_wc_matrix, CwMatrix, ParityDiagonal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Unitarity,
    Residual,
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P6Similarity,
    WcCw,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Unitarity,
        Property::Residual,
        Property::P1,
        Property::P2,
        Property::P3,
        Property::P4,
        Property::P5,
        Property::P6,
        Property::P6Similarity,
        Property::WcCw,
    ];

    pub fn describe(&self) -> &'static str {
        match self {
            Property::Unitarity => "block is unitary",
            Property::Residual => "eigenpair residuals and unit moduli",
            Property::P1 => "spectrum(alpha) = spectrum(1 - alpha)",
            Property::P2 => "closed under conjugation",
            Property::P3 => "closed under negation",
            Property::P4 => "all eigenvalues simple",
            Property::P5 => "contains 1, -1, i, -i",
            Property::P6 => "spectrum(alpha + 1/2) = i * spectrum(alpha)",
            Property::P6Similarity => "CW(alpha + 1/2) = i D CW(alpha) D^-1",
            Property::WcCw => "WC and CW spectra agree",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Property::Unitarity => "unitarity",
            Property::Residual => "residual",
            Property::P1 => "P1",
            Property::P2 => "P2",
            Property::P3 => "P3",
            Property::P4 => "P4",
            Property::P5 => "P5",
            Property::P6 => "P6",
            Property::P6Similarity => "P6-similarity",
            Property::WcCw => "WC/CW",
        };
        f.write_str(name)
    }
}

/// Outcome of one property check at one frequency.
///
/// `worst` is the measured quantity: a distance that must stay at or below
/// the tolerance, except for P4 where it is the minimum gap and must exceed
/// it.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub property: Property,
    pub alpha: AlphaPQ,
    pub passed: bool,
    pub worst: f64,
    pub tolerance: f64,
}

impl PropertyReport {
    fn at_most(property: Property, alpha: AlphaPQ, worst: f64, tolerance: f64) -> Self {
        PropertyReport {
            property,
            alpha,
            passed: worst <= tolerance,
            worst,
            tolerance,
        }
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        let rel = if self.property == Property::P4 { ">" } else { "<=" };
        write!(
            f,
            "{status} {} at alpha={}: {:.3e} {rel} {:.0e}",
            self.property, self.alpha, self.worst, self.tolerance
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub residual: f64,
    pub multiset: f64,
    pub gap: f64,
    pub unitarity: f64,
    pub similarity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            residual: 1e-8,
            multiset: 1e-8,
            gap: 1e-8,
            unitarity: 1e-12,
            similarity: 1e-12,
        }
    }
}

fn arg_0_2pi(z: &Complex64) -> f64 {
    z.im.atan2(z.re).rem_euclid(std::f64::consts::TAU)
}

/// Distance between two eigenvalue multisets.
///
/// Both lists are sorted by argument in `[0, 2π)` and paired index-wise.
/// If a pair lies farther apart than `tol` (typically a wrap-around at
/// argument 0), greedy nearest-neighbour matching is used instead. Lists of
/// different length are infinitely far apart.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64], tol: f64) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let sort = |v: &[Complex64]| {
        let mut v = v.to_vec();
        v.sort_by(|x, y| arg_0_2pi(x).total_cmp(&arg_0_2pi(y)));
        v
    };
    let (a, b) = (sort(a), sort(b));
    let paired = a
        .iter()
        .zip(&b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    if paired <= tol {
        return paired;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in &a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("equal lengths");
        used[j] = true;
        worst = worst.max(d);
    }
    worst.min(paired)
}

fn mapped(rec: &SpectrumRecord, f: impl Fn(Complex64) -> Complex64) -> Vec<Complex64> {
    rec.eigenvalues.iter().copied().map(f).collect()
}

pub fn spectrum(alpha: AlphaPQ) -> Result<SpectrumRecord> {
    Ok(eigenpairs(&build_cw_matrix(alpha)?)?.record)
}

/// P1 from two precomputed spectra (`alpha` and `1 − alpha`).
pub fn check_p1(rec: &SpectrumRecord, reflected: &SpectrumRecord, tol: f64) -> PropertyReport {
    let d = multiset_distance(&rec.eigenvalues, &reflected.eigenvalues, tol);
    PropertyReport::at_most(Property::P1, rec.alpha, d, tol)
}

pub fn verify_p1(alpha: AlphaPQ) -> Result<PropertyReport> {
    let tol = Tolerances::default().multiset;
    Ok(check_p1(&spectrum(alpha)?, &spectrum(alpha.reflected())?, tol))
}

/// P2 (conjugation) and P3 (negation), in that order.
pub fn verify_p2_p3(rec: &SpectrumRecord, tol: f64) -> [PropertyReport; 2] {
    let conj = multiset_distance(&rec.eigenvalues, &mapped(rec, |z| z.conj()), tol);
    let neg = multiset_distance(&rec.eigenvalues, &mapped(rec, |z| -z), tol);
    [
        PropertyReport::at_most(Property::P2, rec.alpha, conj, tol),
        PropertyReport::at_most(Property::P3, rec.alpha, neg, tol),
    ]
}

/// P4: the smallest eigenvalue gap must exceed `tol`.
pub fn verify_p4(rec: &SpectrumRecord, tol: f64) -> PropertyReport {
    PropertyReport {
        property: Property::P4,
        alpha: rec.alpha,
        passed: rec.min_gap > tol,
        worst: rec.min_gap,
        tolerance: tol,
    }
}

/// P5: distance from the farthest of `{1, −1, i, −i}` to the spectrum.
pub fn verify_p5(rec: &SpectrumRecord, tol: f64) -> PropertyReport {
    let targets = [
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
    ];
    let worst = targets
        .iter()
        .map(|t| {
            rec.eigenvalues
                .iter()
                .map(|z| (z - t).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    PropertyReport::at_most(Property::P5, rec.alpha, worst, tol)
}

/// P6 from two precomputed spectra (`alpha` and `alpha + 1/2`).
pub fn check_p6(rec: &SpectrumRecord, shifted: &SpectrumRecord, tol: f64) -> PropertyReport {
    let rotated = mapped(rec, |z| Complex64::i() * z);
    let d = multiset_distance(&rotated, &shifted.eigenvalues, tol);
    PropertyReport::at_most(Property::P6, rec.alpha, d, tol)
}

/// Largest entry of `|CW(alpha + 1/2) − i D CW(alpha) D⁻¹|`.
pub fn p6_similarity_deviation(block: &CwMatrix, shifted: &CwMatrix) -> f64 {
    let d = ParityDiagonal::for_basis(block.basis());
    d.conjugate(block.matrix(), Complex64::i())
        .max_abs_diff(shifted.matrix())
}

/// Both halves of P6: spectral rotation and the entrywise similarity.
pub fn verify_p6(alpha: AlphaPQ) -> Result<[PropertyReport; 2]> {
    let tol = Tolerances::default();
    let (block, shifted) = (build_cw_matrix(alpha)?, build_cw_matrix(alpha.half_shifted())?);
    let spectra = check_p6(
        &eigenpairs(&block)?.record,
        &eigenpairs(&shifted)?.record,
        tol.multiset,
    );
    let sim = p6_similarity_deviation(&block, &shifted);
    Ok([
        spectra,
        PropertyReport::at_most(Property::P6Similarity, alpha, sim, tol.similarity),
    ])
}

pub fn check_wc_cw(cw: &SpectrumRecord, wc: &SpectrumRecord, tol: f64) -> PropertyReport {
    let d = multiset_distance(&cw.eigenvalues, &wc.eigenvalues, tol);
    PropertyReport::at_most(Property::WcCw, cw.alpha, d, tol)
}

pub fn wc_cw_similarity(alpha: AlphaPQ) -> Result<PropertyReport> {
    let wc = eigenpairs(&build_wc_matrix(alpha)?)?.record;
    Ok(check_wc_cw(&spectrum(alpha)?, &wc, Tolerances::default().multiset))
}

type Builder = dyn Fn(AlphaPQ) -> Result<CwMatrix> + Send + Sync;

/// Runs every property check over a set of frequencies.
///
/// The shift-then-coin block comes from a replaceable builder so that
/// tests can feed in a corrupted matrix and watch the suite fail.
pub struct SymmetrySuite {
    tol: Tolerances,
    builder: Box<Builder>,
}

struct Computed {
    cw: CwMatrix,
    record: SpectrumRecord,
    wc: SpectrumRecord,
}

impl Default for SymmetrySuite {
    fn default() -> Self {
        Self::new(Tolerances::default())
    }
}

impl SymmetrySuite {
    pub fn new(tol: Tolerances) -> Self {
        SymmetrySuite {
            tol,
            builder: Box::new(build_cw_matrix),
        }
    }

    pub fn with_builder(
        mut self,
        builder: impl Fn(AlphaPQ) -> Result<CwMatrix> + Send + Sync + 'static,
    ) -> Self {
        self.builder = Box::new(builder);
        self
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    fn compute(&self, alpha: AlphaPQ) -> Result<Computed> {
        let cw = (self.builder)(alpha)?;
        let record = eigenpairs(&cw)?.record;
        let wc = eigenpairs(&build_wc_matrix(alpha)?)?.record;
        Ok(Computed { cw, record, wc })
    }

    /// Checks every property at each `alpha`; partner frequencies
    /// (`1 − alpha`, `alpha + 1/2`) are computed as needed.
    pub fn run(&self, alphas: &[AlphaPQ]) -> Result<SuiteReport> {
        let mut needed: Vec<AlphaPQ> = alphas
            .iter()
            .flat_map(|a| [*a, a.reflected(), a.half_shifted()])
            .collect();
        needed.sort();
        needed.dedup();
        let computed: BTreeMap<AlphaPQ, Computed> = needed
            .par_iter()
            .map(|&a| Ok((a, self.compute(a)?)))
            .collect::<Result<_>>()?;

        let tol = self.tol;
        let mut reports = Vec::new();
        for alpha in alphas {
            let c = &computed[alpha];
            let rec = &c.record;
            reports.push(PropertyReport::at_most(
                Property::Unitarity,
                *alpha,
                c.cw.matrix().unitarity_deviation(),
                tol.unitarity,
            ));
            let residual_ok = rec.max_residual() <= tol.residual
                && rec.max_modulus_deviation() <= 1e-10
                && rec.len() == alpha.order();
            reports.push(PropertyReport {
                property: Property::Residual,
                alpha: *alpha,
                passed: residual_ok,
                worst: rec.max_residual(),
                tolerance: tol.residual,
            });
            reports.push(check_p1(rec, &computed[&alpha.reflected()].record, tol.multiset));
            reports.extend(verify_p2_p3(rec, tol.multiset));
            reports.push(verify_p4(rec, tol.gap));
            reports.push(verify_p5(rec, tol.multiset));
            let shifted = &computed[&alpha.half_shifted()];
            reports.push(check_p6(rec, &shifted.record, tol.multiset));
            reports.push(PropertyReport::at_most(
                Property::P6Similarity,
                *alpha,
                p6_similarity_deviation(&c.cw, &shifted.cw),
                tol.similarity,
            ));
            reports.push(check_wc_cw(rec, &c.wc, tol.multiset));
        }
        Ok(SuiteReport { reports })
    }
}

/// Aggregate of one property across all frequencies checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropertySummary {
    pub property: Property,
    pub checked: usize,
    pub passed: usize,
    /// Largest deviation seen, or the smallest gap for P4.
    pub worst: f64,
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub reports: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyReport> {
        self.reports.iter().filter(|r| !r.passed)
    }

    pub fn summary(&self) -> Vec<PropertySummary> {
        Property::ALL
            .iter()
            .map(|&property| {
                let of: Vec<&PropertyReport> =
                    self.reports.iter().filter(|r| r.property == property).collect();
                let worst = if property == Property::P4 {
                    of.iter().map(|r| r.worst).fold(f64::INFINITY, f64::min)
                } else {
                    of.iter().map(|r| r.worst).fold(0.0, f64::max)
                };
                PropertySummary {
                    property,
                    checked: of.len(),
                    passed: of.iter().filter(|r| r.passed).count(),
                    worst,
                }
            })
            .collect()
    }
}
