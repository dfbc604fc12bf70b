//! Weyl sums, the joint Beatty-progression exponential sum, a star
//! discrepancy estimate and the hypotheses placed on shift sequences.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::beatty::{BeattyError, BeattyPair};
use crate::euler_product_model::is_prime;
use crate::summation::{ComplexKahanSum, KahanSum};

/// Terms per parallel work unit. Fixed so that the summation order, and with
/// it every bit of the result, does not depend on the thread count.
const CHUNK: u64 = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EquidistError {
    #[error("sequence violates the shift hypotheses at n = {n}: {reason}")]
    HypothesisViolation { n: u64, reason: String },
    #[error(transparent)]
    Beatty(#[from] BeattyError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Finite stand-ins for "increasing, non-negative, `x_n = O(n)`,
/// `x_{n+1} - x_n = Ω(1)`".
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SequenceHypothesis {
    /// `x_n ≤ max_growth · n`.
    pub max_growth: f64,
    /// `x_{n+1} - x_n ≥ min_gap`.
    pub min_gap: f64,
}

impl Default for SequenceHypothesis {
    fn default() -> Self {
        Self {
            max_growth: 1e3,
            min_gap: 1e-2,
        }
    }
}

impl SequenceHypothesis {
    pub fn check<F: Fn(u64) -> f64>(&self, seq: F, n: u64) -> Result<(), EquidistError> {
        let violation = |n, reason: String| Err(EquidistError::HypothesisViolation { n, reason });
        let mut prev = f64::NAN;
        for k in 1..=n {
            let x = seq(k);
            if !x.is_finite() {
                return violation(k, format!("x_n = {x} is not finite"));
            }
            if x < 0.0 {
                return violation(k, format!("x_n = {x} is negative"));
            }
            if x > self.max_growth * k as f64 {
                return violation(k, format!("x_n = {x} exceeds {} · n", self.max_growth));
            }
            if k > 1 && x - prev < self.min_gap {
                return violation(k, format!("gap x_n - x_(n-1) = {} is below {}", x - prev, self.min_gap));
            }
            prev = x;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Checkpoint {
    pub n: u64,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylReport {
    pub n: u64,
    /// `|S_N| / N`.
    pub sum_magnitude: f64,
    /// `|S_n| / n` at every power of two below `N`, then at `N`.
    pub trajectory: Vec<Checkpoint>,
}

impl WeylReport {
    /// Whether every checkpoint from `n_from` on lies below `eps`.
    pub fn stays_below(&self, eps: f64, n_from: u64) -> bool {
        self.trajectory.iter().filter(|c| c.n >= n_from).all(|c| c.magnitude < eps)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,magnitude\n");
        for c in &self.trajectory {
            out.push_str(&format!("{},{:.16e}\n", c.n, c.magnitude));
        }
        out
    }
}

#[inline]
fn unit(turns: f64) -> Complex64 {
    let frac = turns - turns.floor();
    let (s, c) = (TAU * frac).sin_cos();
    Complex64::new(c, s)
}

/// Sums `exp(2πi · phase(n))` for `n = 1..=n_total`, where `phase` returns the
/// argument in turns, recording the partial sums at powers of two.
fn exp_sum<F>(n_total: u64, phase: F) -> Result<WeylReport, EquidistError>
where
    F: Fn(u64) -> Result<f64, EquidistError> + Sync,
{
    let chunks = n_total.div_ceil(CHUNK);
    let parts: Vec<(ComplexKahanSum, Vec<(u64, Complex64)>)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK + 1;
            let hi = ((c + 1) * CHUNK).min(n_total);
            let mut acc = ComplexKahanSum::new();
            let mut marks = Vec::new();
            for n in lo..=hi {
                acc.add(unit(phase(n)?));
                if n.is_power_of_two() && n < n_total {
                    marks.push((n, acc.value()));
                }
            }
            Ok((acc, marks))
        })
        .collect::<Result<_, EquidistError>>()?;

    let mut total = ComplexKahanSum::new();
    let mut trajectory = Vec::new();
    for (acc, marks) in parts {
        let prefix = total.value();
        for (n, partial) in marks {
            trajectory.push(Checkpoint {
                n,
                magnitude: (prefix + partial).norm() / n as f64,
            });
        }
        total.merge(&acc);
    }
    let sum_magnitude = total.value().norm() / n_total as f64;
    trajectory.push(Checkpoint {
        n: n_total,
        magnitude: sum_magnitude,
    });
    Ok(WeylReport {
        n: n_total,
        sum_magnitude,
        trajectory,
    })
}

/// `(1/N)|Σ_{n≤N} exp(2πi · freq · x_n)|`. When `hypothesis` is given the
/// sequence is checked against it first.
pub fn weyl_sum<F>(
    seq: F,
    freq: f64,
    n: u64,
    hypothesis: Option<&SequenceHypothesis>,
) -> Result<WeylReport, EquidistError>
where
    F: Fn(u64) -> f64 + Sync,
{
    if n == 0 {
        return Err(EquidistError::InvalidArgument("N must be >= 1".into()));
    }
    if freq == 0.0 || !freq.is_finite() {
        return Err(EquidistError::InvalidArgument(format!("frequency must be finite and nonzero, got {freq}")));
    }
    if let Some(h) = hypothesis {
        h.check(&seq, n)?;
    }
    exp_sum(n, |k| Ok(freq * seq(k)))
}

/// Integer weights on two finite prime sets, with the derived frequencies
/// `θᵢ = δᵢ Σ k_p log p / 2π`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyVector {
    pub primes1: Vec<(u64, i64)>,
    pub primes2: Vec<(u64, i64)>,
    pub delta1: f64,
    pub delta2: f64,
    pub theta1: f64,
    pub theta2: f64,
}

impl FrequencyVector {
    pub fn new(
        primes1: Vec<(u64, i64)>,
        primes2: Vec<(u64, i64)>,
        delta1: f64,
        delta2: f64,
    ) -> Result<Self, EquidistError> {
        if !(delta1 > 0.0 && delta2 > 0.0 && delta1.is_finite() && delta2.is_finite()) {
            return Err(EquidistError::InvalidArgument("deltas must be positive and finite".into()));
        }
        for set in [&primes1, &primes2] {
            let mut ps: Vec<u64> = set.iter().map(|&(p, _)| p).collect();
            ps.sort_unstable();
            ps.dedup();
            if ps.len() != set.len() || !ps.iter().all(|&p| is_prime(p)) {
                return Err(EquidistError::InvalidArgument("prime sets must hold distinct primes".into()));
            }
        }
        if primes1.iter().chain(&primes2).all(|&(_, k)| k == 0) {
            return Err(EquidistError::InvalidArgument("at least one weight must be nonzero".into()));
        }
        let log_sum = |set: &[(u64, i64)]| set.iter().map(|&(p, k)| k as f64 * (p as f64).ln()).sum::<f64>();
        let c1 = log_sum(&primes1) / TAU;
        let c2 = log_sum(&primes2) / TAU;
        Ok(Self {
            theta1: delta1 * c1,
            theta2: delta2 * c2,
            primes1,
            primes2,
            delta1,
            delta2,
        })
    }
}

/// `(1/N)|Σ_{n≤N} exp(2πi((t₁ + δ₁⌊nα⌋)θ₁/δ₁ + (t₂ + δ₂⌊nα'⌋)θ₂/δ₂))|`.
pub fn joint_beatty_weyl(
    pair: &BeattyPair,
    t1: f64,
    t2: f64,
    freq: &FrequencyVector,
    n: u64,
) -> Result<WeylReport, EquidistError> {
    if n == 0 {
        return Err(EquidistError::InvalidArgument("N must be >= 1".into()));
    }
    let constant = {
        let a = t1 * freq.theta1 / freq.delta1;
        let b = t2 * freq.theta2 / freq.delta2;
        (a - a.floor()) + (b - b.floor())
    };
    let (th1, th2) = (freq.theta1, freq.theta2);
    exp_sum(n, |k| {
        let a = pair.term(k)? as f64 * th1;
        let b = pair.conjugate_term(k)? as f64 * th2;
        Ok((a - a.floor()) + (b - b.floor()) + constant)
    })
}

/// `∫₀¹ e^{2πix₁}dx₁ · ∫₀¹∫₀¹ e^{-2πi(θ₁{x₂} + θ₂{x₃})}dx₂dx₃`, which vanishes
/// because the first factor is a full period.
pub const TRIPLE_INTEGRAL: Complex64 = Complex64::new(0.0, 0.0);

pub fn triple_integral_reference() -> Complex64 {
    TRIPLE_INTEGRAL
}

/// Midpoint-rule value of the triple integral with the first factor's
/// frequency replaced by `freq1` (1 recovers the reference).
pub fn triple_integral_quadrature(freq1: f64, theta1: f64, theta2: f64, nodes: u64) -> Complex64 {
    let midpoint = |f: &dyn Fn(f64) -> Complex64| -> Complex64 {
        let h = 1.0 / nodes as f64;
        let mut acc = ComplexKahanSum::new();
        for j in 0..nodes {
            acc.add(f((j as f64 + 0.5) * h));
        }
        acc.value() * h
    };
    let first = midpoint(&|x| unit(freq1 * x));
    let second = midpoint(&|x| unit(-theta1 * x));
    let third = midpoint(&|x| unit(-theta2 * x));
    first * second * third
}

/// Star discrepancy of points reduced mod 1:
/// `D* = 1/(2N) + max_i |x_(i) - (2i - 1)/(2N)|`.
pub fn star_discrepancy(points: &[f64]) -> Result<f64, EquidistError> {
    if points.is_empty() {
        return Err(EquidistError::InvalidArgument("point list is empty".into()));
    }
    if points.iter().any(|x| !x.is_finite()) {
        return Err(EquidistError::InvalidArgument("points must be finite".into()));
    }
    let mut xs: Vec<f64> = points.iter().map(|x| x - x.floor()).collect();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let worst = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| (x - (2.0 * i as f64 + 1.0) / (2.0 * n)).abs())
        .fold(0.0, f64::max);
    Ok(1.0 / (2.0 * n) + worst)
}

/// Compensated mean of a slice; used by experiment statistics.
pub(crate) fn mean(values: &[f64]) -> f64 {
    let s: KahanSum = values.iter().copied().collect();
    s.value() / values.len() as f64
}
