//! Eigenvalue arguments of the evolution block over every admissible
//! `alpha = P/(4Q)` with `Q <= qmax`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, BufRead, Write};

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;

use crate::alpha::AlphaPQ;
use crate::error::{Error, Result};
use crate::spectral::{build_cw_matrix, eigenpairs, multiset_distance};

/// Every admissible `(P, Q)` with `1 <= Q <= qmax`, ordered by `(Q, P)`.
pub fn enumerate_alphas(qmax: i64) -> Vec<AlphaPQ> {
    (1..=qmax)
        .flat_map(|q| {
            (1..4 * q)
                .step_by(2)
                .filter(move |p| p.gcd(&q) == 1)
                .map(move |p| AlphaPQ::new(p, q).expect("admissible by construction"))
        })
        .collect()
}

/// Total number of eigenvalues over [`enumerate_alphas`].
pub fn expected_row_count(qmax: i64) -> usize {
    enumerate_alphas(qmax).iter().map(|a| a.order()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ButterflyRow {
    pub p: i64,
    pub q: i64,
    pub alpha: f64,
    /// Principal argument in `(-π, π]`.
    pub arg: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ButterflyDataset {
    pub qmax: i64,
    pub tolerance: f64,
    pub fraction_count: usize,
    pub rows: Vec<ButterflyRow>,
    pub max_residual: f64,
    pub max_modulus_deviation: f64,
}

pub const CSV_HEADER: &str = "P,Q,alpha,arg_lambda";

/// Fixed 17-significant-digit formatting; parses back to the same `f64`.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn sweep(qmax: i64) -> Result<ButterflyDataset> {
    sweep_with_tolerance(qmax, 1e-8)
}

/// Computes every spectrum up to `qmax`. Fractions are processed in
/// parallel and merged in enumeration order; any solver failure or
/// residual above `tolerance` aborts the whole sweep.
pub fn sweep_with_tolerance(qmax: i64, tolerance: f64) -> Result<ButterflyDataset> {
    if qmax < 1 {
        return Err(Error::Validation(format!("qmax must be at least 1, got {qmax}")));
    }
    let alphas = enumerate_alphas(qmax);
    let records = alphas
        .par_iter()
        .map(|&a| {
            let rec = eigenpairs(&build_cw_matrix(a)?)?.record;
            if !(rec.max_residual() <= tolerance) {
                return Err(Error::Computation {
                    p: a.p(),
                    q: a.q(),
                    reason: format!("residual {:e} exceeds {tolerance:e}", rec.max_residual()),
                });
            }
            Ok(rec)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::with_capacity(records.iter().map(|r| r.len()).sum());
    let (mut max_residual, mut max_modulus_deviation) = (0.0f64, 0.0f64);
    for rec in &records {
        let (p, q) = (rec.alpha.p(), rec.alpha.q());
        let mut args = rec.arguments();
        args.sort_by(f64::total_cmp);
        rows.extend(args.into_iter().map(|arg| ButterflyRow {
            p,
            q,
            alpha: rec.alpha.to_f64(),
            arg,
        }));
        max_residual = max_residual.max(rec.max_residual());
        max_modulus_deviation = max_modulus_deviation.max(rec.max_modulus_deviation());
    }
    Ok(ButterflyDataset {
        qmax,
        tolerance,
        fraction_count: alphas.len(),
        rows,
        max_residual,
        max_modulus_deviation,
    })
}

impl ButterflyDataset {
    /// Arguments grouped by `(P, Q)`.
    pub fn columns(&self) -> BTreeMap<(i64, i64), Vec<f64>> {
        let mut cols: BTreeMap<(i64, i64), Vec<f64>> = BTreeMap::new();
        for r in &self.rows {
            cols.entry((r.p, r.q)).or_default().push(r.arg);
        }
        cols
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "# qmax={}", self.qmax)?;
        writeln!(w, "# tolerance={}", format_real(self.tolerance))?;
        writeln!(w, "# fractions={}", self.fraction_count)?;
        writeln!(w, "# rows={}", self.rows.len())?;
        writeln!(w, "# max_residual={}", format_real(self.max_residual))?;
        writeln!(w, "# max_modulus_deviation={}", format_real(self.max_modulus_deviation))?;
        writeln!(w, "# theta=0 ordering=CW arg_range=(-pi,pi]")?;
        writeln!(w, "{CSV_HEADER}")?;
        for r in &self.rows {
            writeln!(w, "{},{},{},{}", r.p, r.q, format_real(r.alpha), format_real(r.arg))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let bad = |line: usize, what: &str| Error::Validation(format!("dataset line {line}: {what}"));
        let mut meta: BTreeMap<String, String> = BTreeMap::new();
        let mut rows = Vec::new();
        let mut seen_header = false;
        for (i, line) in r.lines().enumerate() {
            let line = line.map_err(|e| Error::Validation(e.to_string()))?;
            let lineno = i + 1;
            if let Some(comment) = line.strip_prefix('#') {
                for kv in comment.split_whitespace() {
                    if let Some((k, v)) = kv.split_once('=') {
                        meta.insert(k.to_string(), v.to_string());
                    }
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            if !seen_header {
                if line.trim() != CSV_HEADER {
                    return Err(bad(lineno, "expected header"));
                }
                seen_header = true;
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            let [p, q, alpha, arg] = fields[..] else {
                return Err(bad(lineno, "expected 4 fields"));
            };
            let int = |s: &str| s.trim().parse::<i64>().map_err(|_| bad(lineno, "bad integer"));
            let real = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(lineno, "bad real"));
            rows.push(ButterflyRow {
                p: int(p)?,
                q: int(q)?,
                alpha: real(alpha)?,
                arg: real(arg)?,
            });
        }
        let get = |k: &str| {
            meta.get(k)
                .ok_or_else(|| Error::Validation(format!("dataset metadata missing {k}")))
        };
        let parse_err = |k: &str| Error::Validation(format!("dataset metadata {k} unparsable"));
        let ds = ButterflyDataset {
            qmax: get("qmax")?.parse().map_err(|_| parse_err("qmax"))?,
            tolerance: get("tolerance")?.parse().map_err(|_| parse_err("tolerance"))?,
            fraction_count: get("fractions")?.parse().map_err(|_| parse_err("fractions"))?,
            max_residual: get("max_residual")?.parse().map_err(|_| parse_err("max_residual"))?,
            max_modulus_deviation: get("max_modulus_deviation")?
                .parse()
                .map_err(|_| parse_err("max_modulus_deviation"))?,
            rows,
        };
        let declared: usize = get("rows")?.parse().map_err(|_| parse_err("rows"))?;
        if declared != ds.rows.len() {
            return Err(Error::Validation(format!(
                "dataset declares {declared} rows but holds {}",
                ds.rows.len()
            )));
        }
        Ok(ds)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AuditCheck {
    /// `4Q` rows per column, and the column set is complete.
    Count,
    /// Column `alpha` equals column `1 − alpha`.
    P1,
    /// Arguments symmetric under `φ → −φ`.
    P2,
    /// Arguments symmetric under `φ → φ + π`.
    P3,
    /// Arguments `0, ±π/2, π` present.
    P5,
    /// Column `alpha + 1/2` equals column `alpha` turned by `π/2`.
    P6,
}

impl fmt::Display for AuditCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditResult {
    pub check: AuditCheck,
    pub checked: usize,
    /// Columns that failed, as `(P, Q)`.
    pub failures: Vec<(i64, i64)>,
    pub worst: f64,
}

impl AuditResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub results: Vec<AuditResult>,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(AuditResult::passed)
    }

    pub fn result(&self, check: AuditCheck) -> &AuditResult {
        self.results
            .iter()
            .find(|r| r.check == check)
            .expect("every check is reported")
    }
}

/// Dataset-level symmetry checks on the unit-circle points `e^{iφ}`.
pub fn symmetry_audit(ds: &ButterflyDataset, tol: f64) -> AuditReport {
    let cols: BTreeMap<(i64, i64), Vec<Complex64>> = ds
        .columns()
        .into_iter()
        .map(|(k, args)| (k, args.into_iter().map(|a| Complex64::from_polar(1.0, a)).collect()))
        .collect();
    let missing = f64::INFINITY;

    let mut results = Vec::new();
    let mut run = |check: AuditCheck, measure: &dyn Fn((i64, i64), &[Complex64]) -> f64| {
        let mut failures = Vec::new();
        let mut worst: f64 = 0.0;
        for (&key, col) in &cols {
            let d = measure(key, col);
            worst = worst.max(d);
            if !(d <= tol) {
                failures.push(key);
            }
        }
        results.push(AuditResult {
            check,
            checked: cols.len(),
            failures,
            worst,
        });
    };

    let partner = |key: (i64, i64), f: fn(AlphaPQ) -> AlphaPQ| {
        AlphaPQ::new(key.0, key.1)
            .ok()
            .map(f)
            .and_then(|a| cols.get(&(a.p(), a.q())))
    };

    run(AuditCheck::Count, &|(p, q), col| {
        let admissible = AlphaPQ::new(p, q).is_ok() && q <= ds.qmax;
        if admissible && col.len() == 4 * q as usize {
            0.0
        } else {
            missing
        }
    });
    run(AuditCheck::P1, &|key, col| match partner(key, |a| a.reflected()) {
        Some(other) => multiset_distance(col, other, tol),
        None => missing,
    });
    run(AuditCheck::P2, &|_, col| {
        let mirrored: Vec<_> = col.iter().map(|z| z.conj()).collect();
        multiset_distance(col, &mirrored, tol)
    });
    run(AuditCheck::P3, &|_, col| {
        let turned: Vec<_> = col.iter().map(|z| -z).collect();
        multiset_distance(col, &turned, tol)
    });
    run(AuditCheck::P5, &|_, col| {
        [0.0, std::f64::consts::FRAC_PI_2, -std::f64::consts::FRAC_PI_2, std::f64::consts::PI]
            .iter()
            .map(|&t| {
                let target = Complex64::from_polar(1.0, t);
                col.iter().map(|z| (z - target).norm()).fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    });
    run(AuditCheck::P6, &|key, col| match partner(key, |a| a.half_shifted()) {
        Some(other) => {
            let turned: Vec<_> = col.iter().map(|z| Complex64::i() * z).collect();
            multiset_distance(&turned, other, tol)
        }
        None => missing,
    });

    let expected: usize = enumerate_alphas(ds.qmax).len();
    if cols.len() != expected || ds.fraction_count != expected {
        let count = results.iter_mut().find(|r| r.check == AuditCheck::Count).unwrap();
        count.worst = missing;
        if count.failures.is_empty() {
            // incomplete dataset: no single column to blame
            count.failures.push((0, 0));
        }
    }
    AuditReport { results }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn pairs(qmax: i64) -> Vec<(i64, i64)> {
        enumerate_alphas(qmax).iter().map(|a| (a.p(), a.q())).collect()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(pairs(1), vec![(1, 1), (3, 1)]);
        assert_eq!(
            pairs(2),
            vec![(1, 1), (3, 1), (1, 2), (3, 2), (5, 2), (7, 2)]
        );
        // Q = 3 drops P = 3 and P = 9
        assert_eq!(
            pairs(3)[6..].to_vec(),
            vec![(1, 3), (5, 3), (7, 3), (11, 3)]
        );
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for qmax in [1, 5, 12, 60] {
            let mut brute = Vec::new();
            for q in 1..=qmax {
                for p in 0..=4 * q {
                    if p % 2 == 1 && p > 0 && p < 4 * q && p.gcd(&q) == 1 {
                        brute.push((p, q));
                    }
                }
            }
            assert_eq!(pairs(qmax), brute);
        }
    }

    #[test]
    fn alpha_values_are_unique() {
        let mut vals: Vec<(i64, i64)> = enumerate_alphas(60)
            .iter()
            .map(|a| {
                let f = a.to_fraction();
                (f.num(), f.den())
            })
            .collect();
        let n = vals.len();
        vals.sort();
        vals.dedup();
        assert_eq!(vals.len(), n);
    }

    #[test]
    fn sweep_qmax_one() {
        let ds = sweep(1).unwrap();
        assert_eq!(ds.rows.len(), 8);
        assert_eq!(ds.fraction_count, 2);
        for (_, args) in ds.columns() {
            for (got, want) in args.iter().zip([-FRAC_PI_2, 0.0, FRAC_PI_2, PI]) {
                assert!((got - want).abs() < 1e-12, "{args:?}");
            }
        }
        assert!(symmetry_audit(&ds, 1e-8).all_passed());
    }

    #[test]
    fn sweep_row_count_and_ordering() {
        let ds = sweep(6).unwrap();
        assert_eq!(ds.rows.len(), expected_row_count(6));
        for (&(_, q), args) in &ds.columns() {
            assert_eq!(args.len(), 4 * q as usize);
            assert!(args.windows(2).all(|w| w[0] <= w[1]));
            assert!(args.iter().all(|a| *a > -PI && *a <= PI));
        }
        let keys: Vec<(i64, i64)> = ds.columns().keys().copied().collect();
        assert_eq!(keys.len(), ds.fraction_count);
    }

    #[test]
    fn audit_passes_and_detects_perturbation() {
        let mut ds = sweep(12).unwrap();
        let report = symmetry_audit(&ds, 1e-8);
        assert!(report.all_passed(), "{report:?}");

        let victim = ds.rows.iter().position(|r| (r.p, r.q) == (5, 7)).unwrap() + 3;
        ds.rows[victim].arg += 1e-3;
        let report = symmetry_audit(&ds, 1e-8);
        assert!(!report.all_passed());
        assert!(report.result(AuditCheck::P2).failures.contains(&(5, 7)));
        assert!(report.result(AuditCheck::P3).failures.contains(&(5, 7)));
        assert!(report.result(AuditCheck::P1).failures.contains(&(23, 7)));
    }

    #[test]
    fn audit_flags_missing_columns() {
        let mut ds = sweep(2).unwrap();
        ds.rows.retain(|r| (r.p, r.q) != (3, 2));
        let report = symmetry_audit(&ds, 1e-8);
        assert!(!report.result(AuditCheck::Count).passed());
        // partner of (3,2) under both P1 and P6 is gone
        assert!(report.result(AuditCheck::P1).failures.contains(&(5, 2)));
        assert!(report.result(AuditCheck::P6).failures.contains(&(7, 2)));
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let ds = sweep(4).unwrap();
        let text = ds.to_csv_string();
        assert!(text.lines().any(|l| l == CSV_HEADER));
        let back = ButterflyDataset::read_csv(text.as_bytes()).unwrap();
        assert_eq!(back, ds);
        assert_eq!(back.to_csv_string(), text);
    }

    #[test]
    fn sweep_is_deterministic() {
        assert_eq!(sweep(8).unwrap().to_csv_string(), sweep(8).unwrap().to_csv_string());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(sweep(0).is_err());
        assert!(ButterflyDataset::read_csv("P,Q\n".as_bytes()).is_err());
        let truncated = "# qmax=1\n# tolerance=1e-8\n# fractions=2\n# rows=3\n# max_residual=0\n# max_modulus_deviation=0\nP,Q,alpha,arg_lambda\n1,1,0.25,0\n";
        assert!(ButterflyDataset::read_csv(truncated.as_bytes()).is_err());
    }

    #[test]
    fn real_formatting_has_seventeen_digits() {
        assert_eq!(format_real(0.25), "2.5000000000000000e-1");
        let x = 0.1 + 0.2;
        assert_eq!(format_real(x).parse::<f64>().unwrap(), x);
    }
}
