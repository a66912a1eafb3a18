use num_complex::Complex64;
use qwalk_core::walk::Param;
use qwalk_core::Fraction;

/// A spinor whose norm is further than this from 1 is rejected.
pub const SPINOR_REJECT: f64 = 1e-6;
/// A spinor whose norm is within this of 1 is taken as given.
pub const SPINOR_EXACT: f64 = 1e-12;

/// A rational literal `a/b` (or a bare integer) is read exactly; anything
/// else must parse as a real number and switches the walk to approximate
/// mode.
pub fn parse_param(s: &str) -> Result<Param, String> {
    let s = s.trim();
    if s.contains('/') || s.parse::<i64>().is_ok() {
        return s
            .parse::<Fraction>()
            .map(Param::Exact)
            .map_err(|e| format!("{s:?}: {e}"));
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(Param::Approx(x)),
        _ => Err(format!("{s:?} is neither a rational literal nor a finite real")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor {
    pub value: [Complex64; 2],
    /// Norm deviation that was corrected, if any.
    pub renormalized_from: Option<f64>,
}

/// Parses `reL,imL,reR,imR`.
pub fn parse_spinor(s: &str) -> Result<Spinor, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("initial spinor {s:?} must be four reals reL,imL,reR,imR"))?;
    let [a, b, c, d] = parts[..] else {
        return Err(format!("initial spinor {s:?} must have exactly four components"));
    };
    let v = [Complex64::new(a, b), Complex64::new(c, d)];
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let dev = (norm - 1.0).abs();
    if !(dev <= SPINOR_REJECT) {
        return Err(format!(
            "initial spinor has norm {norm}, more than {SPINOR_REJECT:e} away from 1"
        ));
    }
    if dev <= SPINOR_EXACT {
        return Ok(Spinor {
            value: v,
            renormalized_from: None,
        });
    }
    Ok(Spinor {
        value: [v[0] / norm, v[1] / norm],
        renormalized_from: Some(dev),
    })
}
