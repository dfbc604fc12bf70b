//! Truncated and randomised Euler products, the discrete mean-square
//! approximation statistic, the Bergman sup-norm bound on rectangles and an
//! empirical two-sample comparison of shifted and random products.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::equidistribution::{mean, EquidistError, SequenceHypothesis};
use crate::summation::{ComplexKahanSum, KahanSum};
use crate::zeta_core::phase::{ln_dd, sin_cos_phase};
use crate::zeta_core::{EvalDomain, ZetaError, ZetaLine};

/// Factors `1 - ω(p)p^{-s}` smaller than this in modulus are refused.
pub const VANISHING_FACTOR_TOL: f64 = 1e-14;

/// Largest admissible relative quadrature error in [`bergman_sup_bound`].
pub const BERGMAN_QUADRATURE_TOL: f64 = 0.05;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EulerError {
    #[error("Euler factor at p = {p} vanishes at s = {s}")]
    VanishingFactor { p: u64, s: Complex64 },
    #[error(transparent)]
    Hypothesis(#[from] EquidistError),
    #[error("z = {0} lies on the boundary of the rectangle")]
    PointOnBoundary(Complex64),
    #[error("estimated quadrature error {relative:.3e} of the integral exceeds {limit}")]
    QuadratureTooCoarse { relative: f64, limit: f64 },
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The first `m` primes by a sieve of Eratosthenes.
pub fn first_primes(m: usize) -> Vec<u64> {
    if m == 0 {
        return Vec::new();
    }
    let mf = m as f64;
    let limit = if m < 6 {
        15
    } else {
        (mf * (mf.ln() + mf.ln().ln())).ceil() as usize + 3
    };
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::with_capacity(m);
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        if primes.len() == m {
            break;
        }
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// The first `m` primes with their logarithms.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationLevel {
    primes: Vec<u64>,
    ln_p: Vec<(f64, f64)>,
}

impl TruncationLevel {
    pub fn new(m: usize) -> Result<Self, EulerError> {
        if m == 0 {
            return Err(EulerError::InvalidArgument("truncation level m must be >= 1".into()));
        }
        let primes = first_primes(m);
        if primes.len() != m || !primes.iter().all(|&p| is_prime(p)) || !primes.windows(2).all(|w| w[0] < w[1]) {
            return Err(EulerError::InvalidArgument(format!("could not build the first {m} primes")));
        }
        let ln_p = primes.iter().map(|&p| ln_dd(p)).collect();
        Ok(Self { primes, ln_p })
    }

    pub fn m(&self) -> usize {
        self.primes.len()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn largest_prime(&self) -> u64 {
        *self.primes.last().expect("level is nonempty")
    }

    /// `p^{-s}` for the `i`-th prime.
    #[inline]
    fn prime_power(&self, i: usize, s: Complex64) -> Complex64 {
        let (hi, lo) = self.ln_p[i];
        let (sn, cs) = sin_cos_phase(s.im, hi, lo);
        Complex64::new(cs, -sn) * (-s.re * hi).exp()
    }
}

/// Unit-modulus phases `ω(p)` for the primes of one truncation level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomPhase {
    /// Seed and stream of the generator, absent for deterministic phases.
    pub seed: Option<(u64, u64)>,
    pub phases: Vec<Complex64>,
}

impl RandomPhase {
    /// `ω(p) = 1` for all p.
    pub fn ones(level: &TruncationLevel) -> Self {
        Self {
            seed: None,
            phases: vec![Complex64::new(1.0, 0.0); level.m()],
        }
    }

    /// `ω(p) = p^{-iτ}`.
    pub fn shift(level: &TruncationLevel, tau: f64) -> Self {
        let phases = (0..level.m())
            .map(|i| level.prime_power(i, Complex64::new(0.0, tau)))
            .collect();
        Self { seed: None, phases }
    }

    /// Independent uniform phases from ChaCha8 with the given seed and stream.
    pub fn sample(level: &TruncationLevel, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let phases = (0..level.m())
            .map(|_| {
                let (s, c) = (TAU * rng.random::<f64>()).sin_cos();
                Complex64::new(c, s)
            })
            .collect();
        Self {
            seed: Some((seed, stream)),
            phases,
        }
    }
}

/// `log ∏ (1 - ω_i p_i^{-s})^{-1}`, summed with compensation. With all ω = 1
/// every product `ω · p^{-s}` is exact, so both public paths agree bitwise.
fn log_product(level: &TruncationLevel, omega: Option<&[Complex64]>, s: Complex64) -> Result<Complex64, EulerError> {
    let one = Complex64::new(1.0, 0.0);
    let mut acc = ComplexKahanSum::new();
    for i in 0..level.m() {
        let w = omega.map_or(one, |o| o[i]);
        let factor = one - w * level.prime_power(i, s);
        if factor.norm() < VANISHING_FACTOR_TOL {
            return Err(EulerError::VanishingFactor { p: level.primes[i], s });
        }
        acc.add(-factor.ln());
    }
    Ok(acc.value())
}

/// `ζ_m(s) = ∏_{i≤m} (1 - p_i^{-s})^{-1}` for `Re s > 0`.
pub fn zeta_m(level: &TruncationLevel, s: Complex64) -> Result<Complex64, EulerError> {
    if !(s.re > 0.0) {
        return Err(EulerError::InvalidArgument(format!("zeta_m needs Re s > 0, got {s}")));
    }
    Ok(log_product(level, None, s)?.exp())
}

/// `∏_{i≤m} (1 - ω(p_i) p_i^{-s})^{-1}`.
pub fn random_zeta_m(level: &TruncationLevel, phase: &RandomPhase, s: Complex64) -> Result<Complex64, EulerError> {
    if phase.phases.len() != level.m() {
        return Err(EulerError::InvalidArgument(format!(
            "{} phases supplied for {} primes",
            phase.phases.len(),
            level.m()
        )));
    }
    if !(s.re > 0.0) {
        return Err(EulerError::InvalidArgument(format!("random_zeta_m needs Re s > 0, got {s}")));
    }
    Ok(log_product(level, Some(&phase.phases), s)?.exp())
}

/// Axis-aligned rectangle `[re_min, re_max] × [im_min, im_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rect {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self, EulerError> {
        let ok = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if !ok || re_min >= re_max || im_min >= im_max {
            return Err(EulerError::InvalidArgument(format!(
                "degenerate rectangle [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    /// Distance from an interior point to the boundary; `None` outside.
    pub fn boundary_distance(&self, z: Complex64) -> Option<f64> {
        let d = (z.re - self.re_min)
            .min(self.re_max - z.re)
            .min(z.im - self.im_min)
            .min(self.im_max - z.im);
        (d >= 0.0).then_some(d)
    }

    /// Lattice with spacing close to `step` covering the rectangle, including
    /// its edges.
    pub fn lattice(&self, step: f64) -> Result<Vec<Complex64>, EulerError> {
        if !(step > 0.0) {
            return Err(EulerError::InvalidArgument("grid step must be positive".into()));
        }
        let nx = ((self.re_max - self.re_min) / step).round().max(1.0) as usize;
        let ny = ((self.im_max - self.im_min) / step).round().max(1.0) as usize;
        let mut pts = Vec::with_capacity((nx + 1) * (ny + 1));
        for i in 0..=nx {
            let x = self.re_min + (self.re_max - self.re_min) * i as f64 / nx as f64;
            for j in 0..=ny {
                let y = self.im_min + (self.im_max - self.im_min) * j as f64 / ny as f64;
                pts.push(Complex64::new(x, y));
            }
        }
        Ok(pts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum MeanSquareMode {
    Pointwise,
    SupOnGrid { rect: Rect, step: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanSquareStat {
    pub m: usize,
    pub n: u64,
    pub sigma: f64,
    pub mode: MeanSquareMode,
    pub value: f64,
    /// Whether every ζ evaluation stayed in the certified domain.
    pub certified: bool,
}

/// `(1/N) Σ_{n≤N} d_n²` with `d_n = |ζ - ζ_m|` at `σ + ix_n` (pointwise) or
/// its maximum over the grid shifted by `ix_n`.
pub fn mean_square_discrete<F>(
    level: &TruncationLevel,
    sigma: f64,
    shifts: F,
    n: u64,
    mode: MeanSquareMode,
    hypothesis: Option<&SequenceHypothesis>,
) -> Result<MeanSquareStat, EulerError>
where
    F: Fn(u64) -> f64 + Sync,
{
    if n == 0 {
        return Err(EulerError::InvalidArgument("N must be >= 1".into()));
    }
    let base: Vec<Complex64> = match mode {
        MeanSquareMode::Pointwise => {
            if !(sigma > 0.5 && sigma < 1.0) {
                return Err(EulerError::InvalidArgument(format!("sigma must lie in (1/2, 1), got {sigma}")));
            }
            vec![Complex64::new(sigma, 0.0)]
        }
        MeanSquareMode::SupOnGrid { rect, step } => {
            if !(rect.re_min > 0.5 && rect.re_max < 1.0) {
                return Err(EulerError::InvalidArgument("grid rectangle must lie in 1/2 < Re s < 1".into()));
            }
            rect.lattice(step)?
        }
    };
    if let Some(h) = hypothesis {
        h.check(&shifts, n)?;
    }
    let xs: Vec<f64> = (1..=n).map(&shifts).collect();
    let t_needed = xs
        .iter()
        .flat_map(|x| base.iter().map(move |b| (b.im + x).abs()))
        .fold(0.0, f64::max);
    let domain = if t_needed <= EvalDomain::default().t_max {
        EvalDomain::default()
    } else {
        EvalDomain::with_t_max(t_needed.ceil())?
    };

    let mut sigmas: Vec<f64> = base.iter().map(|b| b.re).collect();
    sigmas.sort_by(f64::total_cmp);
    sigmas.dedup();
    let lines: Vec<ZetaLine> = sigmas
        .iter()
        .map(|&s| ZetaLine::new(s, domain))
        .collect::<Result<_, _>>()?;
    let line_of = |re: f64| &lines[sigmas.binary_search_by(|v| v.total_cmp(&re)).expect("sigma tabulated")];

    let squares: Vec<f64> = xs
        .par_iter()
        .map(|&x| {
            let mut worst = 0.0f64;
            for b in &base {
                let t = b.im + x;
                let z = line_of(b.re).eval(t)?;
                let zm = zeta_m(level, Complex64::new(b.re, t))?;
                worst = worst.max((z - zm).norm());
            }
            Ok(worst * worst)
        })
        .collect::<Result<_, EulerError>>()?;

    Ok(MeanSquareStat {
        m: level.m(),
        n,
        sigma,
        mode,
        value: mean(&squares),
        certified: domain.is_certified(),
    })
}

/// Midpoint samples of a function on a rectangle, at two resolutions.
#[derive(Debug, Clone, PartialEq)]
pub struct RectSamples {
    pub rect: Rect,
    pub step: f64,
    /// `∫_U |f|² dA` by the midpoint rule at the requested step.
    pub integral: f64,
    /// The same with the step doubled.
    pub coarse_integral: f64,
}

fn midpoint_square_integral<F>(rect: &Rect, nx: usize, ny: usize, f: &F) -> Result<f64, EulerError>
where
    F: Fn(Complex64) -> Result<Complex64, EulerError> + Sync,
{
    let hx = (rect.re_max - rect.re_min) / nx as f64;
    let hy = (rect.im_max - rect.im_min) / ny as f64;
    let rows: Vec<KahanSum> = (0..nx)
        .into_par_iter()
        .map(|i| {
            let x = rect.re_min + (i as f64 + 0.5) * hx;
            let mut row = KahanSum::new();
            for j in 0..ny {
                let y = rect.im_min + (j as f64 + 0.5) * hy;
                row.add(f(Complex64::new(x, y))?.norm_sqr());
            }
            Ok(row)
        })
        .collect::<Result<_, EulerError>>()?;
    let mut total = KahanSum::new();
    for r in &rows {
        total.merge(r);
    }
    Ok(total.value() * hx * hy)
}

impl RectSamples {
    pub fn sample<F>(rect: Rect, step: f64, f: F) -> Result<Self, EulerError>
    where
        F: Fn(Complex64) -> Result<Complex64, EulerError> + Sync,
    {
        if !(step > 0.0) {
            return Err(EulerError::InvalidArgument("quadrature step must be positive".into()));
        }
        let cells = |len: f64| ((len / (2.0 * step)).round().max(1.0) as usize) * 2;
        let nx = cells(rect.re_max - rect.re_min);
        let ny = cells(rect.im_max - rect.im_min);
        let integral = midpoint_square_integral(&rect, nx, ny, &f)?;
        let coarse_integral = midpoint_square_integral(&rect, nx / 2, ny / 2, &f)?;
        Ok(Self {
            rect,
            step,
            integral,
            coarse_integral,
        })
    }

    /// Richardson estimate of the error in `integral`, relative to it.
    pub fn relative_error(&self) -> f64 {
        let err = (self.integral - self.coarse_integral).abs() / 3.0;
        if self.integral > 0.0 {
            err / self.integral
        } else if err == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BergmanBound {
    pub z: Complex64,
    pub boundary_distance: f64,
    /// `(√π d(z, ∂U))^{-1} (∫_U |f|² dA)^{1/2}`.
    pub bound: f64,
    /// The same with the integral lowered by its estimated quadrature error.
    pub conservative_bound: f64,
    pub relative_quadrature_error: f64,
}

/// Right-hand side of the Bergman-space inequality at an interior point `z`.
pub fn bergman_sup_bound(samples: &RectSamples, z: Complex64) -> Result<BergmanBound, EulerError> {
    let d = samples
        .rect
        .boundary_distance(z)
        .ok_or_else(|| EulerError::InvalidArgument(format!("z = {z} lies outside the rectangle")))?;
    if d == 0.0 {
        return Err(EulerError::PointOnBoundary(z));
    }
    let relative = samples.relative_error();
    if relative >= BERGMAN_QUADRATURE_TOL {
        return Err(EulerError::QuadratureTooCoarse {
            relative,
            limit: BERGMAN_QUADRATURE_TOL,
        });
    }
    let scale = 1.0 / (PI.sqrt() * d);
    Ok(BergmanBound {
        z,
        boundary_distance: d,
        bound: scale * samples.integral.sqrt(),
        conservative_bound: scale * (samples.integral * (1.0 - relative)).sqrt(),
        relative_quadrature_error: relative,
    })
}

/// Two-sample Kolmogorov–Smirnov statistic `sup_x |F_a(x) - F_b(x)|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64, EulerError> {
    if a.is_empty() || b.is_empty() {
        return Err(EulerError::InvalidArgument("KS needs two nonempty samples".into()));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(EulerError::InvalidArgument("KS samples contain NaN".into()));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = if a[i] <= b[j] { a[i] } else { b[j] };
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitTheoremReport {
    pub m: usize,
    pub h: f64,
    pub s0: Complex64,
    pub n: u64,
    pub trials: u64,
    pub seed: u64,
    pub ks_re: f64,
    pub ks_im: f64,
    pub ks_log_abs: f64,
    pub caveat: &'static str,
}

impl LimitTheoremReport {
    pub fn max_ks(&self) -> f64 {
        self.ks_re.max(self.ks_im).max(self.ks_log_abs)
    }
}

pub const LIMIT_THEOREM_CAVEAT: &str =
    "random phases are sampled only for the primes of the truncation level; the infinite product space is not modelled";

/// Compares `{ζ_m(s0 + ihn)}_{n≤N}` with `{ζ_m(s0, ω_k)}_{k≤trials}` through
/// KS distances of the real part, imaginary part and log-modulus.
pub fn empirical_limit_theorem(
    level: &TruncationLevel,
    h: f64,
    s0: Complex64,
    n: u64,
    trials: u64,
    seed: u64,
) -> Result<LimitTheoremReport, EulerError> {
    if !(s0.re > 0.5 && s0.re < 1.0) {
        return Err(EulerError::InvalidArgument(format!("Re s0 must lie in (1/2, 1), got {}", s0.re)));
    }
    if !(h > 0.0 && h.is_finite()) || n == 0 || trials == 0 {
        return Err(EulerError::InvalidArgument("need h > 0, N >= 1 and trials >= 1".into()));
    }
    let shifted: Vec<Complex64> = (1..=n)
        .into_par_iter()
        .map(|k| zeta_m(level, s0 + Complex64::new(0.0, h * k as f64)))
        .collect::<Result<_, _>>()?;
    let random: Vec<Complex64> = (0..trials)
        .into_par_iter()
        .map(|k| random_zeta_m(level, &RandomPhase::sample(level, seed, k), s0))
        .collect::<Result<_, _>>()?;
    let marginal = |f: fn(&Complex64) -> f64| -> Result<f64, EulerError> {
        let a: Vec<f64> = shifted.iter().map(f).collect();
        let b: Vec<f64> = random.iter().map(f).collect();
        ks_two_sample(&a, &b)
    };
    Ok(LimitTheoremReport {
        m: level.m(),
        h,
        s0,
        n,
        trials,
        seed,
        ks_re: marginal(|z| z.re)?,
        ks_im: marginal(|z| z.im)?,
        ks_log_abs: marginal(|z| z.norm().ln())?,
        caveat: LIMIT_THEOREM_CAVEAT,
    })
}
