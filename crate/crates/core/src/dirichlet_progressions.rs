//! Dirichlet series with bounded coefficients sampled along arithmetic
//! progressions of vertical shifts, and the finite-scan uniqueness bound for
//! pairs of such series.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::beatty::{sigma_alpha, BeattyError, BeattyPair};
use crate::summation::ComplexKahanSum;
use crate::zeta_core::phase::{ln_dd, sin_cos_phase};

/// Relative slack allowed when checking `|f(m)| ≤ B`.
const BOUND_SLACK: f64 = 1e-12;

/// Absolute slack in the lower-bound comparison of [`UniquenessProblem::verify_distinct`].
pub const VERIFY_SLACK: f64 = 1e-9;

pub const DEFAULT_PHI_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DirichletError {
    #[error("|f({m})| = {value} exceeds the declared bound {bound} of `{name}`")]
    BoundViolated {
        name: String,
        m: u64,
        value: f64,
        bound: f64,
    },
    #[error("coefficient `{name}` is not finite at m = {m}")]
    NonFiniteCoefficient { name: String, m: u64 },
    #[error("Dirichlet series only converge absolutely for Re s > 1, got Re s = {0}")]
    DivergentRegion(f64),
    #[error("Re s = {sigma} is not above the certified bound b = {b}")]
    SampleBelowBound { sigma: f64, b: f64 },
    #[error("permutation is not a bijection: {0}")]
    NotAPermutation(String),
    #[error(transparent)]
    Beatty(#[from] BeattyError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

type CoeffFn = dyn Fn(u64) -> Complex64 + Send + Sync;

/// An arithmetic function `f: ℕ → ℂ` with a declared bound `|f(m)| ≤ B`. The
/// bound is checked on every access.
#[derive(Clone)]
pub struct BoundedCoeffFn {
    name: String,
    bound: f64,
    f: Arc<CoeffFn>,
    support: Option<Arc<dyn Fn(u64) -> bool + Send + Sync>>,
}

impl fmt::Debug for BoundedCoeffFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundedCoeffFn")
            .field("name", &self.name)
            .field("bound", &self.bound)
            .finish_non_exhaustive()
    }
}

impl BoundedCoeffFn {
    pub fn new<F>(name: impl Into<String>, bound: f64, f: F) -> Result<Self, DirichletError>
    where
        F: Fn(u64) -> Complex64 + Send + Sync + 'static,
    {
        if !(bound >= 0.0 && bound.is_finite()) {
            return Err(DirichletError::InvalidArgument(format!(
                "coefficient bound must be finite and >= 0, got {bound}"
            )));
        }
        Ok(Self {
            name: name.into(),
            bound,
            f: Arc::new(f),
            support: None,
        })
    }

    /// Declares that `f(m) = 0` wherever `support(m)` is false. Such indices
    /// are skipped by the series and difference routines.
    pub fn with_support<P>(mut self, support: P) -> Self
    where
        P: Fn(u64) -> bool + Send + Sync + 'static,
    {
        self.support = Some(Arc::new(support));
        self
    }

    pub fn may_be_nonzero(&self, m: u64) -> bool {
        self.support.as_ref().is_none_or(|s| s(m))
    }

    /// `f ≡ 1`, the coefficients of ζ.
    pub fn one() -> Self {
        Self::new("one", 1.0, |_| Complex64::new(1.0, 0.0)).expect("valid bound")
    }

    pub fn zero() -> Self {
        Self::new("zero", 0.0, |_| Complex64::new(0.0, 0.0))
            .expect("valid bound")
            .with_support(|_| false)
    }

    /// Indicator of the powers of two.
    pub fn powers_of_two() -> Self {
        Self::new("powers_of_two", 1.0, |m| {
            Complex64::new(if m.is_power_of_two() { 1.0 } else { 0.0 }, 0.0)
        })
        .expect("valid bound")
        .with_support(|m| m.is_power_of_two())
    }

    /// The Liouville function λ(m).
    pub fn liouville() -> Self {
        Self::new("liouville", 1.0, |m| {
            let mut n = m;
            let mut omega = 0u32;
            let mut p = 2;
            while p * p <= n {
                while n % p == 0 {
                    n /= p;
                    omega += 1;
                }
                p += 1;
            }
            if n > 1 {
                omega += 1;
            }
            Complex64::new(if omega.is_multiple_of(2) { 1.0 } else { -1.0 }, 0.0)
        })
        .expect("valid bound")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn get(&self, m: u64) -> Result<Complex64, DirichletError> {
        let v = (self.f)(m);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(DirichletError::NonFiniteCoefficient {
                name: self.name.clone(),
                m,
            });
        }
        let value = v.norm();
        if value > self.bound * (1.0 + BOUND_SLACK) {
            return Err(DirichletError::BoundViolated {
                name: self.name.clone(),
                m,
                value,
                bound: self.bound,
            });
        }
        Ok(v)
    }
}

/// The vertical progression `{t + δn : n ∈ ℕ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Progression {
    pub t: f64,
    pub delta: f64,
}

impl Progression {
    pub fn new(t: f64, delta: f64) -> Result<Self, DirichletError> {
        if !t.is_finite() || !(delta > 0.0 && delta.is_finite()) {
            return Err(DirichletError::InvalidArgument(format!(
                "progression needs finite t and delta > 0, got t = {t}, delta = {delta}"
            )));
        }
        Ok(Self { t, delta })
    }

    pub fn at(&self, n: u64) -> f64 {
        self.t + self.delta * n as f64
    }
}

/// A bijection of ℕ, evaluated lazily.
#[derive(Debug, Clone, PartialEq)]
pub enum Permutation {
    Identity,
    Transposition(u64, u64),
    Beatty(BeattyPair),
    /// `table[n - 1]` is the image of `n`; indices past the table are fixed.
    Table(Vec<u64>),
}

impl Permutation {
    /// A finite table, which must permute `{1, …, len}`.
    pub fn table(table: Vec<u64>) -> Result<Self, DirichletError> {
        let mut seen = vec![false; table.len() + 1];
        for &v in &table {
            if v == 0 || v as usize > table.len() || seen[v as usize] {
                return Err(DirichletError::NotAPermutation(format!(
                    "table entry {v} is repeated or outside 1..={}",
                    table.len()
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Self::Table(table))
    }

    pub fn transposition(a: u64, b: u64) -> Result<Self, DirichletError> {
        if a == 0 || b == 0 {
            return Err(DirichletError::InvalidArgument("transposition entries must be >= 1".into()));
        }
        Ok(Self::Transposition(a, b))
    }

    pub fn apply(&self, n: u64) -> Result<u64, DirichletError> {
        if n == 0 {
            return Err(DirichletError::InvalidArgument("permutations act on n >= 1".into()));
        }
        Ok(match self {
            Self::Identity => n,
            Self::Transposition(a, b) => {
                if n == *a {
                    *b
                } else if n == *b {
                    *a
                } else {
                    n
                }
            }
            Self::Beatty(pair) => sigma_alpha(pair, n)?,
            Self::Table(t) => t.get(n as usize - 1).copied().unwrap_or(n),
        })
    }

    /// Checks that the images of `1..=n` are distinct. Images above `n` are
    /// reported as overflow and the matching preimages from above `n` are not
    /// searched for.
    pub fn check_prefix(&self, n: u64) -> Result<PrefixReport, DirichletError> {
        let mut seen = std::collections::HashSet::with_capacity(n as usize);
        let mut overflow = Vec::new();
        let mut collisions = Vec::new();
        for k in 1..=n {
            let v = self.apply(k)?;
            if !seen.insert(v) {
                collisions.push(k);
            }
            if v > n {
                overflow.push(v);
            }
        }
        let missing = (1..=n).filter(|v| !seen.contains(v)).count() as u64;
        Ok(PrefixReport {
            n,
            injective: collisions.is_empty(),
            collisions,
            overflow,
            missing,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrefixReport {
    pub n: u64,
    pub injective: bool,
    pub collisions: Vec<u64>,
    /// Images of `1..=n` lying above `n`.
    pub overflow: Vec<u64>,
    /// Members of `1..=n` not hit from `1..=n`. Equals `overflow.len()` for a
    /// bijection.
    pub missing: u64,
}

/// `m^{-iθ} = exp(-iθ log m)`.
#[inline]
fn unit_power(m: u64, theta: f64) -> Complex64 {
    let (hi, lo) = ln_dd(m);
    let (s, c) = sin_cos_phase(theta, hi, lo);
    Complex64::new(c, -s)
}

/// `m^{-s}`.
#[inline]
fn complex_power(m: u64, s: Complex64) -> Complex64 {
    let (hi, lo) = ln_dd(m);
    let (sn, cs) = sin_cos_phase(s.im, hi, lo);
    Complex64::new(cs, -sn) * (-s.re * hi).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirichletValue {
    pub value: Complex64,
    pub n_terms: u64,
    /// Bound on the modulus of the omitted tail `Σ_{m > N} f(m) m^{-s}`.
    pub tail_bound: f64,
}

/// Partial sum of `Σ f(m) m^{-s}` over `m ≤ n_terms` with a tail bound.
pub fn dirichlet_eval(f: &BoundedCoeffFn, s: Complex64, n_terms: u64) -> Result<DirichletValue, DirichletError> {
    if s.re <= 1.0 {
        return Err(DirichletError::DivergentRegion(s.re));
    }
    if n_terms == 0 {
        return Err(DirichletError::InvalidArgument("n_terms must be >= 1".into()));
    }
    let mut acc = ComplexKahanSum::new();
    for m in (1..=n_terms).filter(|&m| f.may_be_nonzero(m)) {
        let c = f.get(m)?;
        if c != Complex64::new(0.0, 0.0) {
            acc.add(c * complex_power(m, s));
        }
    }
    let nf = n_terms as f64;
    Ok(DirichletValue {
        value: acc.value(),
        n_terms,
        tail_bound: f.bound() * nf.powf(1.0 - s.re) / (s.re - 1.0),
    })
}

/// Two Dirichlet series sampled along two progressions, the second one
/// re-indexed by a permutation.
#[derive(Debug, Clone)]
pub struct UniquenessProblem {
    pub f1: BoundedCoeffFn,
    pub f2: BoundedCoeffFn,
    pub p1: Progression,
    pub p2: Progression,
    pub permutation: Permutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuWitness {
    pub n: u64,
    pub mu: u64,
    pub phi: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessCertificate {
    pub tool_version: &'static str,
    /// Index attaining the minimum of `b_n` over the scanned window.
    pub n: u64,
    pub mu: u64,
    pub phi_mu: Complex64,
    /// `b_n = 1 + 2Bμ/|φ_n(μ)|` at the witness index.
    pub b_n: f64,
    /// Minimum of `b_n` over the scanned indices.
    pub b: f64,
    /// `max(B₁, B₂)`.
    pub coefficient_bound: f64,
    /// `(n_max, m_max)`.
    pub scan_limits: (u64, u64),
    pub phi_tol: f64,
    pub verify_slack: f64,
    /// Indices in `1..=n_max` with no μ up to `m_max`.
    pub indices_without_mu: u64,
}

impl UniquenessCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistinctSample {
    pub s: Complex64,
    pub difference: f64,
    pub lower_bound: f64,
    pub truncation: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistinctReport {
    pub n: u64,
    pub b: f64,
    pub n_terms: u64,
    pub samples: Vec<DistinctSample>,
    pub violations: u64,
}

impl UniquenessProblem {
    pub fn new(
        f1: BoundedCoeffFn,
        f2: BoundedCoeffFn,
        p1: Progression,
        p2: Progression,
        permutation: Permutation,
    ) -> Self {
        Self {
            f1,
            f2,
            p1,
            p2,
            permutation,
        }
    }

    pub fn coefficient_bound(&self) -> f64 {
        self.f1.bound().max(self.f2.bound())
    }

    /// The two vertical shifts `(t₁ + δ₁n, t₂ + δ₂σ(n))` attached to index `n`.
    pub fn shifts(&self, n: u64) -> Result<(f64, f64), DirichletError> {
        Ok((self.p1.at(n), self.p2.at(self.permutation.apply(n)?)))
    }

    /// `φ_n(m) = f₁(m) m^{-i(t₁+δ₁n)} - f₂(m) m^{-i(t₂+δ₂σ(n))}`.
    pub fn phi(&self, n: u64, m: u64) -> Result<Complex64, DirichletError> {
        if m == 0 {
            return Err(DirichletError::InvalidArgument("m must be >= 1".into()));
        }
        let (th1, th2) = self.shifts(n)?;
        self.phi_with_shifts(th1, th2, m)
    }

    fn phi_with_shifts(&self, th1: f64, th2: f64, m: u64) -> Result<Complex64, DirichletError> {
        let zero = Complex64::new(0.0, 0.0);
        let a = if self.f1.may_be_nonzero(m) { self.f1.get(m)? } else { zero };
        let b = if self.f2.may_be_nonzero(m) { self.f2.get(m)? } else { zero };
        let mut out = zero;
        if a != out {
            out += a * unit_power(m, th1);
        }
        if b != zero {
            out -= b * unit_power(m, th2);
        }
        Ok(out)
    }

    /// Least `m ≤ m_max` with `|φ_n(m)| > tol`.
    pub fn find_mu(&self, n: u64, m_max: u64, tol: f64) -> Result<Option<MuWitness>, DirichletError> {
        let (th1, th2) = self.shifts(n)?;
        for m in 1..=m_max {
            let phi = self.phi_with_shifts(th1, th2, m)?;
            if phi.norm() > tol {
                return Ok(Some(MuWitness { n, mu: m, phi }));
            }
        }
        Ok(None)
    }

    /// Minimises `b_n = 1 + 2Bμ/|φ_n(μ)|` over `n ≤ n_max`. `None` when no
    /// index in the window has a μ up to `m_max`.
    pub fn uniqueness_bound(
        &self,
        n_max: u64,
        m_max: u64,
        tol: f64,
    ) -> Result<Option<UniquenessCertificate>, DirichletError> {
        if n_max == 0 || m_max == 0 {
            return Err(DirichletError::InvalidArgument("n_max and m_max must be >= 1".into()));
        }
        if !(tol >= 0.0) {
            return Err(DirichletError::InvalidArgument(format!("tol must be >= 0, got {tol}")));
        }
        let witnesses: Vec<Option<MuWitness>> = (1..=n_max)
            .into_par_iter()
            .map(|n| self.find_mu(n, m_max, tol))
            .collect::<Result<_, _>>()?;
        let big_b = self.coefficient_bound();
        let b_of = |w: &MuWitness| 1.0 + 2.0 * big_b * w.mu as f64 / w.phi.norm();
        let without = witnesses.iter().filter(|w| w.is_none()).count() as u64;
        // First index wins ties, keeping the result independent of scheduling.
        let best = witnesses
            .iter()
            .flatten()
            .fold(None::<(f64, &MuWitness)>, |acc, w| {
                let b = b_of(w);
                match acc {
                    Some((best_b, _)) if best_b <= b => acc,
                    _ => Some((b, w)),
                }
            });
        Ok(best.map(|(b, w)| UniquenessCertificate {
            tool_version: env!("CARGO_PKG_VERSION"),
            n: w.n,
            mu: w.mu,
            phi_mu: w.phi,
            b_n: b,
            b,
            coefficient_bound: big_b,
            scan_limits: (n_max, m_max),
            phi_tol: tol,
            verify_slack: VERIFY_SLACK,
            indices_without_mu: without,
        }))
    }

    /// For each sample `s` with `Re s > b`, evaluates both series at the
    /// certified index and checks
    /// `|L(s + iθ₁, f₁) - L(s + iθ₂, f₂)| ≥ |φ(μ)|μ^{-σ} - 2Bμ^{1-σ}/(σ-1)`.
    pub fn verify_distinct(
        &self,
        cert: &UniquenessCertificate,
        samples: &[Complex64],
        n_terms: u64,
    ) -> Result<DistinctReport, DirichletError> {
        let (th1, th2) = self.shifts(cert.n)?;
        let big_b = self.coefficient_bound();
        let phi_abs = cert.phi_mu.norm();
        let mu = cert.mu as f64;
        let mut out = Vec::with_capacity(samples.len());
        for &s in samples {
            if s.re <= cert.b {
                return Err(DirichletError::SampleBelowBound { sigma: s.re, b: cert.b });
            }
            let l1 = dirichlet_eval(&self.f1, s + Complex64::new(0.0, th1), n_terms)?;
            let l2 = dirichlet_eval(&self.f2, s + Complex64::new(0.0, th2), n_terms)?;
            let difference = (l1.value - l2.value).norm();
            let sigma = s.re;
            let lower_bound =
                phi_abs * mu.powf(-sigma) - 2.0 * big_b * mu.powf(1.0 - sigma) / (sigma - 1.0);
            let truncation = l1.tail_bound + l2.tail_bound;
            let holds = difference + truncation >= lower_bound - VERIFY_SLACK;
            out.push(DistinctSample {
                s,
                difference,
                lower_bound,
                truncation,
                holds,
            });
        }
        let violations = out.iter().filter(|x| !x.holds).count() as u64;
        Ok(DistinctReport {
            n: cert.n,
            b: cert.b,
            n_terms,
            samples: out,
            violations,
        })
    }
}
