use std::f64::consts::PI;

use num_complex::Complex64;

use super::chi::log_chi;
use super::gamma::log_gamma;
use super::zeta::zeta;
use super::ZetaError;

const LN_PI: f64 = 1.1447298858494002;

/// Largest tolerated |Im Z(t)| before the evaluation is declared unreliable.
pub const IMAGINARY_LEAK_TOL: f64 = 1e-8;

/// Riemann–Siegel θ(t) = Im log Γ(1/4 + it/2) - (t/2) log π, the continuous
/// branch of `-arg χ(1/2 + it) / 2` with θ(0) = 0.
pub fn theta(t: f64) -> Result<f64, ZetaError> {
    if !(t >= 2.0) {
        return Err(ZetaError::BelowDomain(t));
    }
    let lg = log_gamma(Complex64::new(0.25, 0.5 * t))?;
    Ok(lg.im - 0.5 * t * LN_PI)
}

/// θ along a monotone sweep, obtained by unwrapping `-arg χ(1/2 + it) / 2`
/// (defined mod π) from the isolated value at the first point.
pub fn theta_sweep(ts: &[f64]) -> Result<Vec<f64>, ZetaError> {
    let Some(&first) = ts.first() else {
        return Ok(Vec::new());
    };
    let increasing = ts.windows(2).all(|w| w[1] >= w[0]);
    let decreasing = ts.windows(2).all(|w| w[1] <= w[0]);
    if !(increasing || decreasing) {
        return Err(ZetaError::InvalidArgument("theta sweep must be monotone".into()));
    }
    let mut out = Vec::with_capacity(ts.len());
    let mut prev_t = first;
    let mut prev = theta(first)?;
    out.push(prev);
    for &t in &ts[1..] {
        if t < 2.0 {
            return Err(ZetaError::BelowDomain(t));
        }
        let raw = -0.5 * log_chi(Complex64::new(0.5, t))?.im;
        let mid = 0.5 * (t + prev_t);
        let predicted = prev + 0.5 * (mid / (2.0 * PI)).ln() * (t - prev_t);
        let k = ((predicted - raw) / PI).round();
        let value = raw + k * PI;
        out.push(value);
        prev = value;
        prev_t = t;
    }
    Ok(out)
}

/// Hardy's Z(t) = ζ(1/2 + it) e^{iθ(t)}, real for real t.
pub fn hardy_z(t: f64) -> Result<f64, ZetaError> {
    let th = theta(t)?;
    let z = zeta(Complex64::new(0.5, t))? * Complex64::from_polar(1.0, th);
    if z.im.abs() >= IMAGINARY_LEAK_TOL {
        return Err(ZetaError::ImaginaryLeak { t, im: z.im });
    }
    Ok(z.re)
}
