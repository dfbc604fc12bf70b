//! Beatty sequences `⌊mα⌋`, the Rayleigh dissection of ℕ, the swap
//! permutation σ_α and a finite exclusion scan for the set of α for which
//! `1, α, α', αθ₁ + α'θ₂` can be linearly dependent over ℚ.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Absolute distance to an integer below which `⌊mα⌋` is considered
/// undecidable in double precision.
pub const FLOOR_GUARD: f64 = 1e-9;

/// Distance from α under which a root of the exclusion quadratic is reported.
pub const ROOT_MATCH_TOL: f64 = 1e-9;

pub const GOLDEN_LITERAL: &str = "1.618033988749894848204586834366";
pub const SQRT2_LITERAL: &str = "1.414213562373095048801688724210";
pub const SQRT3_LITERAL: &str = "1.732050807568877293527446341506";
pub const E_MINUS_ONE_LITERAL: &str = "1.718281828459045235360287471353";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BeattyError {
    #[error("alpha = {0} must be a finite real number > 1")]
    InvalidAlpha(f64),
    #[error("floor of {m}·{alpha} is too close to an integer to decide")]
    AmbiguousFloor { alpha: f64, m: u64 },
    #[error("{n} belongs to neither Beatty sequence of alpha = {alpha}")]
    Unclassifiable { alpha: f64, n: u64 },
    #[error("{n} lies in both Beatty sequences of alpha = {alpha}; alpha behaves as a rational")]
    RationalAlpha { alpha: f64, n: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Resolves `golden`, `sqrt2`, `sqrt3`, `e-1` to their compiled-in literals, or parses
/// a decimal number.
pub fn resolve_alpha(name: &str) -> Option<f64> {
    let literal = match name {
        "golden" => GOLDEN_LITERAL,
        "sqrt2" => SQRT2_LITERAL,
        "sqrt3" => SQRT3_LITERAL,
        "e-1" => E_MINUS_ONE_LITERAL,
        other => other,
    };
    literal.parse().ok()
}

/// `⌊mα⌋`, refusing products that sit within [`FLOOR_GUARD`] of an integer
/// unless the product of the stored doubles is an exact integer (the rational
/// test path).
pub fn beatty_term(alpha: f64, m: u64) -> Result<u64, BeattyError> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(BeattyError::InvalidAlpha(alpha));
    }
    if m == 0 {
        return Err(BeattyError::InvalidArgument("Beatty index m must be >= 1".into()));
    }
    let mf = m as f64;
    let p = mf * alpha;
    let nearest = p.round();
    let guard = FLOOR_GUARD.max(4.0 * p * f64::EPSILON);
    if (p - nearest).abs() < guard {
        if mf.mul_add(alpha, -nearest) == 0.0 {
            return Ok(nearest as u64);
        }
        return Err(BeattyError::AmbiguousFloor { alpha, m });
    }
    Ok(p.floor() as u64)
}

/// An irrational surrogate α > 1 with its conjugate α' = α / (α - 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeattyPair {
    pub alpha: f64,
    pub alpha_prime: f64,
}

impl BeattyPair {
    pub fn new(alpha: f64) -> Result<Self, BeattyError> {
        if !(alpha > 1.0 && alpha.is_finite()) {
            return Err(BeattyError::InvalidAlpha(alpha));
        }
        let alpha_prime = alpha / (alpha - 1.0);
        if !alpha_prime.is_finite() || (1.0 / alpha + 1.0 / alpha_prime - 1.0).abs() > 1e-14 {
            return Err(BeattyError::InvalidAlpha(alpha));
        }
        Ok(Self { alpha, alpha_prime })
    }

    pub fn golden() -> Self {
        Self::new(resolve_alpha("golden").expect("literal")).expect("golden ratio > 1")
    }

    pub fn sqrt2() -> Self {
        Self::new(resolve_alpha("sqrt2").expect("literal")).expect("sqrt 2 > 1")
    }

    pub fn term(&self, m: u64) -> Result<u64, BeattyError> {
        beatty_term(self.alpha, m)
    }

    pub fn conjugate_term(&self, m: u64) -> Result<u64, BeattyError> {
        beatty_term(self.alpha_prime, m)
    }

    /// Which sequence `n` belongs to, and its index there.
    pub fn classify(&self, n: u64) -> Result<(BeattyClass, u64), BeattyError> {
        if n == 0 {
            return Err(BeattyError::InvalidArgument("n must be >= 1".into()));
        }
        let in_alpha = find_index(self.alpha, n)?;
        let in_prime = find_index(self.alpha_prime, n)?;
        match (in_alpha, in_prime) {
            (Some(m), None) => Ok((BeattyClass::Alpha, m)),
            (None, Some(m)) => Ok((BeattyClass::AlphaPrime, m)),
            (Some(_), Some(_)) => Err(BeattyError::RationalAlpha {
                alpha: self.alpha,
                n,
            }),
            (None, None) => Err(BeattyError::Unclassifiable {
                alpha: self.alpha,
                n,
            }),
        }
    }
}

/// The index m with `⌊mβ⌋ = n`, checking only `m ∈ {⌊n/β⌋, ⌈n/β⌉}`.
fn find_index(beta: f64, n: u64) -> Result<Option<u64>, BeattyError> {
    let x = n as f64 / beta;
    let lo = x.floor() as u64;
    let hi = x.ceil() as u64;
    for m in [lo, hi] {
        if m >= 1 && beatty_term(beta, m)? == n {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BeattyClass {
    Alpha,
    AlphaPrime,
}

/// σ_α: swaps `⌊mα⌋ ↔ ⌊mα'⌋`.
pub fn sigma_alpha(pair: &BeattyPair, n: u64) -> Result<u64, BeattyError> {
    match pair.classify(n)? {
        (BeattyClass::Alpha, m) => pair.conjugate_term(m),
        (BeattyClass::AlphaPrime, m) => pair.term(m),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionReport {
    pub alpha: f64,
    pub alpha_prime: f64,
    pub n_max: u64,
    pub count_alpha: u64,
    pub count_alpha_prime: u64,
    pub overlaps: u64,
    pub gaps: u64,
    pub first_overlaps: Vec<u64>,
    pub first_gaps: Vec<u64>,
}

impl PartitionReport {
    pub fn violations(&self) -> u64 {
        self.overlaps + self.gaps
    }
}

/// One row of the materialised dissection: `value = ⌊m·β⌋` with β = α or α'.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartitionRow {
    pub value: u64,
    pub class: BeattyClass,
    pub m: u64,
}

fn sequence_up_to(beta: f64, n_max: u64) -> Result<Vec<u64>, BeattyError> {
    let mut out = Vec::with_capacity((n_max as f64 / beta) as usize + 1);
    for m in 1.. {
        let v = beatty_term(beta, m)?;
        if v > n_max {
            break;
        }
        out.push(v);
    }
    Ok(out)
}

/// Materialises both sequences up to `n_max` and checks that together they
/// cover `{1, …, n_max}` exactly once.
pub fn rayleigh_partition_check(pair: &BeattyPair, n_max: u64) -> Result<PartitionReport, BeattyError> {
    if n_max == 0 {
        return Err(BeattyError::InvalidArgument("n_max must be >= 1".into()));
    }
    let a = sequence_up_to(pair.alpha, n_max)?;
    let b = sequence_up_to(pair.alpha_prime, n_max)?;
    let mut hits = vec![0u8; n_max as usize + 1];
    for &v in a.iter().chain(&b) {
        hits[v as usize] = hits[v as usize].saturating_add(1);
    }
    let mut report = PartitionReport {
        alpha: pair.alpha,
        alpha_prime: pair.alpha_prime,
        n_max,
        count_alpha: a.len() as u64,
        count_alpha_prime: b.len() as u64,
        overlaps: 0,
        gaps: 0,
        first_overlaps: Vec::new(),
        first_gaps: Vec::new(),
    };
    for (v, &h) in hits.iter().enumerate().skip(1) {
        match h {
            0 => {
                report.gaps += 1;
                if report.first_gaps.len() < 10 {
                    report.first_gaps.push(v as u64);
                }
            }
            1 => {}
            _ => {
                report.overlaps += 1;
                if report.first_overlaps.len() < 10 {
                    report.first_overlaps.push(v as u64);
                }
            }
        }
    }
    Ok(report)
}

/// Rows of both sequences up to `n_max`, sorted by value.
pub fn partition_rows(pair: &BeattyPair, n_max: u64) -> Result<Vec<PartitionRow>, BeattyError> {
    let mut rows = Vec::new();
    for (beta, class) in [(pair.alpha, BeattyClass::Alpha), (pair.alpha_prime, BeattyClass::AlphaPrime)] {
        for (i, v) in sequence_up_to(beta, n_max)?.into_iter().enumerate() {
            rows.push(PartitionRow {
                value: v,
                class,
                m: i as u64 + 1,
            });
        }
    }
    rows.sort_by_key(|r| (r.value, r.class == BeattyClass::AlphaPrime));
    Ok(rows)
}

/// θ = δ · log q / 2π for a positive rational `q = num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaComponent {
    pub delta: f64,
    pub q_num: u64,
    pub q_den: u64,
    pub value: f64,
}

impl ThetaComponent {
    fn new(delta: f64, q_num: u64, q_den: u64) -> Self {
        let value = delta * ((q_num as f64).ln() - (q_den as f64).ln()) / TAU;
        Self {
            delta,
            q_num,
            q_den,
            value,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.q_num == self.q_den
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExclusionWitness {
    pub k: [i64; 4],
    pub theta: (ThetaComponent, ThetaComponent),
    pub roots: Vec<f64>,
    pub distance: f64,
    /// All coefficients vanish, so every real x solves the equation.
    pub identically_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExclusionScan {
    pub alpha: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub k_bound: i64,
    pub primes: Vec<u64>,
    pub exponent_bound: u32,
    pub equations_checked: u64,
    pub witnesses: Vec<ExclusionWitness>,
}

impl ExclusionScan {
    /// No root of the scanned family lies near α. Necessary, not sufficient,
    /// for α ∈ ℒ(δ₁, δ₂).
    pub fn passes(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Real roots of `(k₂ + k₄θ₁)x² + (k₁ - k₂ + k₃ - k₄θ₁ + k₄θ₂)x - k₁ = 0`.
/// Returns `None` when every coefficient vanishes.
pub fn exclusion_roots(k: [i64; 4], theta1: f64, theta2: f64) -> Option<Vec<f64>> {
    let [k1, k2, k3, k4] = k.map(|v| v as f64);
    let a = k2 + k4 * theta1;
    let b = k1 - k2 + k3 - k4 * theta1 + k4 * theta2;
    let c = -k1;
    let scale = 1e-12 * (1.0 + k4.abs() * (theta1.abs() + theta2.abs()));
    if a.abs() <= scale {
        if b.abs() <= scale {
            return if c == 0.0 { None } else { Some(Vec::new()) };
        }
        return Some(vec![-c / b]);
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Some(Vec::new());
    }
    if c == 0.0 {
        let mut roots = vec![0.0, -b / a];
        roots.dedup();
        return Some(roots);
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q / a, c / q) };
    let mut roots = vec![r1.min(r2), r1.max(r2)];
    roots.dedup();
    Some(roots)
}

/// All `q = ∏ p^{e_p}` with `|e_p| ≤ bound`, as reduced fractions.
fn rationals(primes: &[u64], bound: u32) -> Result<Vec<(u64, u64)>, BeattyError> {
    let mut out = vec![(1u64, 1u64)];
    for &p in primes {
        let mut next = Vec::with_capacity(out.len() * (2 * bound as usize + 1));
        for &(num, den) in &out {
            for e in -(bound as i64)..=bound as i64 {
                let pe = p
                    .checked_pow(e.unsigned_abs() as u32)
                    .ok_or_else(|| BeattyError::InvalidArgument(format!("{p}^{e} overflows")))?;
                let (n2, d2) = if e >= 0 {
                    (num.checked_mul(pe), Some(den))
                } else {
                    (Some(num), den.checked_mul(pe))
                };
                match (n2, d2) {
                    (Some(n2), Some(d2)) => next.push((n2, d2)),
                    _ => {
                        return Err(BeattyError::InvalidArgument(
                            "rational from prime set overflows u64".into(),
                        ))
                    }
                }
            }
        }
        out = next;
    }
    Ok(out)
}

/// Enumerates `k ∈ [-k_bound, k_bound]⁴ ∖ {0}` and θ built from rationals over
/// `primes` with exponents in `[-exponent_bound, exponent_bound]`, and returns
/// every equation with a root within [`ROOT_MATCH_TOL`] of α.
pub fn exclusion_scan(
    delta1: f64,
    delta2: f64,
    alpha: f64,
    k_bound: i64,
    primes: &[u64],
    exponent_bound: u32,
) -> Result<ExclusionScan, BeattyError> {
    if !(delta1 > 0.0 && delta2 > 0.0) {
        return Err(BeattyError::InvalidArgument("deltas must be positive".into()));
    }
    if k_bound < 1 || exponent_bound < 1 {
        return Err(BeattyError::InvalidArgument("k_bound and exponent_bound must be >= 1".into()));
    }
    let mut distinct = primes.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != primes.len() || distinct.iter().any(|&p| p < 2) {
        return Err(BeattyError::InvalidArgument("primes must be distinct and >= 2".into()));
    }
    let qs = rationals(&distinct, exponent_bound)?;
    let mut thetas = Vec::new();
    for &(n1, d1) in &qs {
        for &(n2, d2) in &qs {
            let t1 = ThetaComponent::new(delta1, n1, d1);
            let t2 = ThetaComponent::new(delta2, n2, d2);
            if !(t1.is_zero() && t2.is_zero()) {
                thetas.push((t1, t2));
            }
        }
    }

    let range: Vec<i64> = (-k_bound..=k_bound).collect();
    let witnesses: Vec<ExclusionWitness> = range
        .par_iter()
        .map(|&k1| {
            let mut found = Vec::new();
            for &k2 in &range {
                for &k3 in &range {
                    for &k4 in &range {
                        let k = [k1, k2, k3, k4];
                        if k == [0; 4] {
                            continue;
                        }
                        scan_thetas(k, &thetas, alpha, &mut found);
                    }
                }
            }
            found
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let side = (2 * k_bound + 1) as u64;
    let theta_free = side.pow(3) - 1;
    Ok(ExclusionScan {
        alpha,
        delta1,
        delta2,
        k_bound,
        primes: primes.to_vec(),
        exponent_bound,
        equations_checked: theta_free + (side.pow(4) - side.pow(3)) * thetas.len() as u64,
        witnesses,
    })
}

fn scan_thetas(
    k: [i64; 4],
    thetas: &[(ThetaComponent, ThetaComponent)],
    alpha: f64,
    found: &mut Vec<ExclusionWitness>,
) {
    // With k₄ = 0 the equation does not involve θ; test it once.
    let thetas = if k[3] == 0 { &thetas[..1] } else { thetas };
    for &(t1, t2) in thetas {
        match exclusion_roots(k, t1.value, t2.value) {
            None => found.push(ExclusionWitness {
                k,
                theta: (t1, t2),
                roots: Vec::new(),
                distance: 0.0,
                identically_zero: true,
            }),
            Some(roots) => {
                let distance = roots
                    .iter()
                    .map(|r| (r - alpha).abs())
                    .fold(f64::INFINITY, f64::min);
                if distance < ROOT_MATCH_TOL {
                    found.push(ExclusionWitness {
                        k,
                        theta: (t1, t2),
                        roots,
                        distance,
                        identically_zero: false,
                    });
                }
            }
        }
    }
}
