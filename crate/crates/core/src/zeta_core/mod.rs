//! Double-precision evaluation of ζ(s), log Γ(s), χ(s), θ(t) and Hardy's Z(t).
//!
//! ζ is computed by Euler–Maclaurin summation with `N = max(20, ⌈2|t|⌉)` terms
//! and eight Bernoulli corrections. The error budget is certified to 1e-9 for
//! `|t| ≤ 10^4` and `Re s ∈ (-1, 6]`; wider domains are accepted when a caller
//! builds an [`EvalDomain`] explicitly, but carry no certificate.

mod chi;
mod gamma;
mod hardy;
pub(crate) mod phase;
mod zeta;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use chi::{chi, chi_in, chi_lower_bound_check, functional_equation_residual, log_chi, ChiBoundReport};
pub use gamma::log_gamma;
pub use hardy::{hardy_z, theta, theta_sweep};
pub use zeta::{em_term_count, zeta, zeta_in, zeta_with_terms, ZetaLine};

/// Complex argument or value; `s = σ + it` throughout the crate.
pub type ComplexValue = Complex64;

/// Radius of the excluded disk around the pole at `s = 1`.
pub const POLE_GUARD: f64 = 1e-12;

/// Largest `|t|` for which the 1e-9 error budget is certified.
pub const CERTIFIED_T_MAX: f64 = 1e4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZetaError {
    #[error("s = {0} lies within the pole guard of s = 1")]
    PoleAt1(Complex64),
    #[error("s = {s} is outside the evaluation domain {domain}")]
    OutOfDomain { s: Complex64, domain: EvalDomain },
    #[error("log Γ has a pole at the non-positive integer {0}")]
    PoleAtNonPositiveInteger(f64),
    #[error("Γ(1 - s) has a pole at s = {0}")]
    PoleOfGammaFactor(Complex64),
    #[error("t = {0} is below the supported range t ≥ 2")]
    BelowDomain(f64),
    #[error("Z({t}) has imaginary part {im:e}, precision lost")]
    ImaginaryLeak { t: f64, im: f64 },
    #[error("non-finite result while evaluating {0}")]
    NonFinite(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Rectangle `[sigma_min, sigma_max] × [-t_max, t_max]` on which evaluations
/// are accepted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalDomain {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_max: f64,
}

impl EvalDomain {
    pub fn new(sigma_min: f64, sigma_max: f64, t_max: f64) -> Result<Self, ZetaError> {
        if !(sigma_min > -1.0 && sigma_min < sigma_max && sigma_max.is_finite()) {
            return Err(ZetaError::InvalidArgument(format!(
                "need -1 < sigma_min < sigma_max < inf, got [{sigma_min}, {sigma_max}]"
            )));
        }
        if !(t_max >= 2.0 && t_max.is_finite()) {
            return Err(ZetaError::InvalidArgument(format!("need finite t_max >= 2, got {t_max}")));
        }
        Ok(Self {
            sigma_min,
            sigma_max,
            t_max,
        })
    }

    /// The default domain with the vertical range widened to `t_max`.
    pub fn with_t_max(t_max: f64) -> Result<Self, ZetaError> {
        let d = Self::default();
        Self::new(d.sigma_min, d.sigma_max, t_max)
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re >= self.sigma_min && s.re <= self.sigma_max && s.im.abs() <= self.t_max
    }

    pub fn is_certified(&self) -> bool {
        self.t_max <= CERTIFIED_T_MAX
    }

    pub(crate) fn check(&self, s: Complex64) -> Result<(), ZetaError> {
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(ZetaError::NonFinite("argument"));
        }
        if self.contains(s) {
            Ok(())
        } else {
            Err(ZetaError::OutOfDomain { s, domain: *self })
        }
    }
}

impl Default for EvalDomain {
    fn default() -> Self {
        Self {
            sigma_min: -0.999,
            sigma_max: 50.0,
            t_max: CERTIFIED_T_MAX,
        }
    }
}

impl std::fmt::Display for EvalDomain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}, {}] x [-{}, {}]",
            self.sigma_min, self.sigma_max, self.t_max, self.t_max
        )
    }
}

pub(crate) fn finite(z: Complex64, what: &'static str) -> Result<Complex64, ZetaError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(ZetaError::NonFinite(what))
    }
}
