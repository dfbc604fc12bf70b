use std::f64::consts::PI;

use num_complex::Complex64;

use super::{finite, ZetaError};

/// B_{2k} / (2k (2k - 1)) for k = 1..10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// Real part below which the argument is shifted up before Stirling's series.
const SHIFT_TARGET: f64 = 10.0;

/// Principal branch of log Γ(s): the continuation of the real logarithm from
/// the positive axis, with the cut along the negative real axis.
///
/// Arguments with `Re s < 10` are shifted with `Γ(s) = Γ(s + n) / ∏ (s + k)`
/// using principal logarithms, which preserves the principal branch off the
/// cut.
pub fn log_gamma(s: Complex64) -> Result<Complex64, ZetaError> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(ZetaError::NonFinite("log_gamma argument"));
    }
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        return Err(ZetaError::PoleAtNonPositiveInteger(s.re));
    }

    let mut z = s;
    let mut correction = Complex64::new(0.0, 0.0);
    if z.re < SHIFT_TARGET {
        let shifts = (SHIFT_TARGET - z.re).ceil() as usize;
        for _ in 0..shifts {
            correction += z.ln();
            z += 1.0;
        }
    }
    finite(stirling(z) - correction, "log_gamma")
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series
}
