use num_complex::Complex64;

use super::phase::{ln_dd, sin_cos_phase};
use super::{finite, EvalDomain, ZetaError, POLE_GUARD};
use crate::summation::ComplexKahanSum;

/// B_{2k} / (2k)! for k = 1..8.
const EM_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
];

/// Number of explicit terms used by the Euler–Maclaurin sum at height `t`.
pub fn em_term_count(t: f64) -> usize {
    (2.0 * t.abs()).ceil().max(20.0) as usize
}

/// ζ(s) on the default (certified) domain.
pub fn zeta(s: Complex64) -> Result<Complex64, ZetaError> {
    zeta_in(s, &EvalDomain::default())
}

pub fn zeta_in(s: Complex64, domain: &EvalDomain) -> Result<Complex64, ZetaError> {
    domain.check(s)?;
    zeta_with_terms(s, em_term_count(s.im))
}

/// Euler–Maclaurin evaluation with an explicit term count. Only the pole is
/// rejected here; accuracy outside the certified domain is the caller's
/// concern.
pub fn zeta_with_terms(s: Complex64, n_terms: usize) -> Result<Complex64, ZetaError> {
    if (s - 1.0).norm() < POLE_GUARD {
        return Err(ZetaError::PoleAt1(s));
    }
    let n_terms = n_terms.max(2);
    let value = euler_maclaurin(s, n_terms, |n| {
        let (hi, lo) = ln_dd(n as u64);
        (hi, lo, (-s.re * hi).exp())
    });
    finite(value, "zeta")
}

/// `head(n)` supplies `(ln n` as a double-double pair, `n^{-σ})`. Both
/// evaluation paths feed the same numbers through here, so their results agree
/// bit for bit.
#[inline]
fn euler_maclaurin<F>(s: Complex64, n_terms: usize, head: F) -> Complex64
where
    F: Fn(usize) -> (f64, f64, f64),
{
    let mut acc = ComplexKahanSum::new();
    for n in 1..n_terms {
        let (ln_hi, ln_lo, modulus) = head(n);
        let (sin, cos) = sin_cos_phase(s.im, ln_hi, ln_lo);
        acc.add(Complex64::new(modulus * cos, -modulus * sin));
    }

    let big_n = n_terms as f64;
    let (ln_hi, ln_lo) = ln_dd(n_terms as u64);
    let (sin, cos) = sin_cos_phase(s.im, ln_hi, ln_lo);
    let n_pow = Complex64::new(cos, -sin) * (-s.re * ln_hi).exp();
    let mut tail = n_pow * big_n / (s - 1.0) + n_pow * 0.5;

    let inv_n2 = 1.0 / (big_n * big_n);
    let mut rising = s;
    let mut power = n_pow / big_n;
    for (k, c) in EM_COEFFS.iter().enumerate() {
        tail += rising * power * *c;
        let j = 2.0 * (k as f64 + 1.0);
        rising *= (s + (j - 1.0)) * (s + j);
        power *= inv_n2;
    }
    acc.value() + tail
}

/// ζ along a fixed vertical line `Re s = sigma`, with `ln n` and `n^{-σ}`
/// tabulated once. Values equal [`zeta_in`] bit for bit.
#[derive(Debug, Clone)]
pub struct ZetaLine {
    sigma: f64,
    domain: EvalDomain,
    ln_n: Vec<(f64, f64)>,
    modulus: Vec<f64>,
}

impl ZetaLine {
    pub fn new(sigma: f64, domain: EvalDomain) -> Result<Self, ZetaError> {
        domain.check(Complex64::new(sigma, 0.0))?;
        let n_max = em_term_count(domain.t_max);
        let mut ln_n = Vec::with_capacity(n_max);
        let mut modulus = Vec::with_capacity(n_max);
        ln_n.push((f64::NAN, f64::NAN));
        modulus.push(f64::NAN);
        for n in 1..n_max {
            let (hi, lo) = ln_dd(n as u64);
            ln_n.push((hi, lo));
            modulus.push((-sigma * hi).exp());
        }
        Ok(Self {
            sigma,
            domain,
            ln_n,
            modulus,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn domain(&self) -> &EvalDomain {
        &self.domain
    }

    pub fn eval(&self, t: f64) -> Result<Complex64, ZetaError> {
        let s = Complex64::new(self.sigma, t);
        self.domain.check(s)?;
        if (s - 1.0).norm() < POLE_GUARD {
            return Err(ZetaError::PoleAt1(s));
        }
        let value = euler_maclaurin(s, em_term_count(t), |n| {
            let (hi, lo) = self.ln_n[n];
            (hi, lo, self.modulus[n])
        });
        finite(value, "zeta")
    }
}
