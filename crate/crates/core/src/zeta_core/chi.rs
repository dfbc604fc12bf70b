use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use super::gamma::log_gamma;
use super::zeta::zeta_in;
use super::{finite, EvalDomain, ZetaError};

const LN_PI: f64 = 1.1447298858494002;

/// log sin(w), switching to the exponential form once `|Im w| > 1` so that the
/// `e^{|Im w|}` growth is never materialised.
fn log_sin(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im > 1.0 {
        // sin w = (i/2) e^{-iw} (1 - e^{2iw})
        let small = (2.0 * i * w).exp();
        -i * w + Complex64::new(-LN_2, PI / 2.0) + (Complex64::new(1.0, 0.0) - small).ln()
    } else if w.im < -1.0 {
        // sin w = (-i/2) e^{iw} (1 - e^{-2iw})
        let small = (-2.0 * i * w).exp();
        i * w + Complex64::new(-LN_2, -PI / 2.0) + (Complex64::new(1.0, 0.0) - small).ln()
    } else {
        w.sin().ln()
    }
}

/// log χ(s) = s log 2 + (s - 1) log π + log sin(πs/2) + log Γ(1 - s), defined
/// modulo 2πi. Returns `-∞` real part at the trivial zeros of the sine factor.
pub fn log_chi(s: Complex64) -> Result<Complex64, ZetaError> {
    let one_minus = Complex64::new(1.0, 0.0) - s;
    if one_minus.im == 0.0 && one_minus.re <= 0.0 && one_minus.re == one_minus.re.round() {
        return Err(ZetaError::PoleOfGammaFactor(s));
    }
    let lg = log_gamma(one_minus)?;
    Ok(s * LN_2 + (s - 1.0) * LN_PI + log_sin(s * (PI / 2.0)) + lg)
}

/// χ(s) on the default domain.
pub fn chi(s: Complex64) -> Result<Complex64, ZetaError> {
    chi_in(s, &EvalDomain::default())
}

pub fn chi_in(s: Complex64, domain: &EvalDomain) -> Result<Complex64, ZetaError> {
    domain.check(s)?;
    let l = log_chi(s)?;
    if l.re == f64::NEG_INFINITY {
        return Ok(Complex64::new(0.0, 0.0));
    }
    finite(l.exp(), "chi")
}

/// |ζ(s) - χ(s) ζ(1 - s)|, a cross-check between two independent code paths.
pub fn functional_equation_residual(s: Complex64, domain: &EvalDomain) -> Result<f64, ZetaError> {
    let reflected = Complex64::new(1.0, 0.0) - s;
    domain.check(reflected)?;
    let lhs = zeta_in(s, domain)?;
    let rhs = chi_in(s, domain)? * zeta_in(reflected, domain)?;
    Ok((lhs - rhs).norm())
}

/// Outcome of scanning |χ(σ + it)| over an evenly spaced t-grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiBoundReport {
    pub sigma: f64,
    pub c: f64,
    pub t_range: (f64, f64),
    pub steps: usize,
    pub min_abs_chi: f64,
    pub min_abs_chi_at: f64,
    /// First grid point from which `|χ| ≥ c` holds on the rest of the grid.
    pub t0: Option<f64>,
    /// max |log|χ(σ+it)| - (1/2 - σ) log(t / 2π)| over the grid.
    pub max_log_deviation: f64,
    /// max t · |log|χ| - (1/2 - σ) log(t / 2π)|.
    pub max_scaled_deviation: f64,
}

impl ChiBoundReport {
    /// True when the scan establishes `|χ| ≥ c` on `[t_from, t_to]`.
    pub fn certifies(&self, t_from: f64, t_to: f64) -> bool {
        match self.t0 {
            Some(t0) => t0 <= t_from && t_to <= self.t_range.1,
            None => false,
        }
    }
}

/// Scans `|χ(σ + it)|` for `σ ∈ (0, 1/2)` on `steps + 1` evenly spaced points.
pub fn chi_lower_bound_check(
    sigma: f64,
    c: f64,
    t_range: (f64, f64),
    steps: usize,
    domain: &EvalDomain,
) -> Result<ChiBoundReport, ZetaError> {
    if !(sigma > 0.0 && sigma < 0.5) {
        return Err(ZetaError::InvalidArgument(format!("sigma = {sigma} not in (0, 1/2)")));
    }
    let (lo, hi) = t_range;
    if !(lo >= 2.0 && hi > lo && steps >= 1 && c > 0.0) {
        return Err(ZetaError::InvalidArgument(format!(
            "need 2 <= t_lo < t_hi, steps >= 1, c > 0; got [{lo}, {hi}], {steps}, {c}"
        )));
    }
    domain.check(Complex64::new(sigma, hi))?;

    let log_c = c.ln();
    let mut min_log = f64::INFINITY;
    let mut min_at = lo;
    let mut t0 = None;
    let mut max_dev: f64 = 0.0;
    let mut max_scaled: f64 = 0.0;
    for k in 0..=steps {
        let t = lo + (hi - lo) * k as f64 / steps as f64;
        let log_abs = log_chi(Complex64::new(sigma, t))?.re;
        if log_abs < min_log {
            min_log = log_abs;
            min_at = t;
        }
        if log_abs >= log_c {
            t0.get_or_insert(t);
        } else {
            t0 = None;
        }
        let dev = (log_abs - (0.5 - sigma) * (t / (2.0 * PI)).ln()).abs();
        max_dev = max_dev.max(dev);
        max_scaled = max_scaled.max(dev * t);
    }
    Ok(ChiBoundReport {
        sigma,
        c,
        t_range,
        steps,
        min_abs_chi: min_log.exp(),
        min_abs_chi_at: min_at,
        t0,
        max_log_deviation: max_dev,
        max_scaled_deviation: max_scaled,
    })
}
