//! Scans for shifts `n` that move ζ on a finite vertical grid into a target
//! disk, joint scans along Beatty progressions and along `σ_α`, and the
//! left-half flip through the functional equation.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::beatty::{exclusion_scan, sigma_alpha, BeattyError, BeattyPair};
use crate::zeta_core::{zeta_in, ChiBoundReport, EvalDomain, ZetaError, ZetaLine};

/// Shift indices per parallel work unit.
const CHUNK: u64 = 256;

pub const JOINT_CAVEAT: &str = "alpha was tested only against a finite family of exclusion equations; \
membership of alpha in the admissible set is not established by this run";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShiftError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("shifts reach |t| = {t_needed}, beyond the evaluation range t_max = {t_max}")]
    DomainOverflow { t_needed: f64, t_max: f64 },
    #[error("target constants must be nonzero")]
    VanishingTarget,
    #[error("no certified lower bound for |chi| at sigma = {sigma} on t in [{t_from}, {t_to}]")]
    ChiBoundUnavailable { sigma: f64, t_from: f64, t_to: f64 },
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Beatty(#[from] BeattyError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// The points `s + ih(k - 1)`, `k = 1..=l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerticalGrid {
    pub s: Complex64,
    pub h: f64,
    pub l: u64,
}

impl VerticalGrid {
    /// A grid in the right half `1/2 < Re s < 1` of the critical strip.
    pub fn new(s: Complex64, h: f64, l: u64) -> Result<Self, ShiftError> {
        if !(s.re > 0.5 && s.re < 1.0) {
            return Err(ShiftError::InvalidGrid(format!("Re s = {} not in (1/2, 1)", s.re)));
        }
        Self::build(s, h, l)
    }

    /// A grid in the left half `0 < Re s < 1/2`.
    pub fn new_left(s: Complex64, h: f64, l: u64) -> Result<Self, ShiftError> {
        if !(s.re > 0.0 && s.re < 0.5) {
            return Err(ShiftError::InvalidGrid(format!("Re s = {} not in (0, 1/2)", s.re)));
        }
        Self::build(s, h, l)
    }

    fn build(s: Complex64, h: f64, l: u64) -> Result<Self, ShiftError> {
        if !(h > 0.0 && h.is_finite() && s.im.is_finite()) || l == 0 {
            return Err(ShiftError::InvalidGrid(format!("need h > 0 and l >= 1, got h = {h}, l = {l}")));
        }
        Ok(Self { s, h, l })
    }

    pub fn points(&self) -> Vec<Complex64> {
        (0..self.l).map(|k| self.s + Complex64::new(0.0, self.h * k as f64)).collect()
    }

    /// Height of grid point `k` (1-based) shifted by `ihn`; depends on `n + k - 1` only.
    #[inline]
    fn height(&self, j: u64) -> f64 {
        self.s.im + self.h * j as f64
    }

    fn height_range(&self, n_max: u64) -> (f64, f64) {
        (self.height(1), self.height(n_max + self.l - 1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TargetDisk {
    pub a: Complex64,
    pub epsilon: f64,
}

impl TargetDisk {
    pub fn new(a: Complex64, epsilon: f64) -> Result<Self, ShiftError> {
        if !(a.re.is_finite() && a.im.is_finite()) || !(epsilon > 0.0) {
            return Err(ShiftError::InvalidArgument(format!("need finite a and epsilon > 0, got {a}, {epsilon}")));
        }
        Ok(Self { a, epsilon })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftHit {
    pub n: u64,
    pub deviations: Vec<f64>,
    pub max_dev: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HitCheckpoint {
    pub n: u64,
    pub hits: u64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HitDensityReport {
    pub n_max: u64,
    pub hits: u64,
    pub density: f64,
    pub first_hits: Vec<u64>,
    /// Counts at every power of two below `n_max`, then at `n_max`.
    pub history: Vec<HitCheckpoint>,
    /// Whether all ζ evaluations stayed within the certified domain.
    pub certified: bool,
    pub params: serde_json::Value,
}

impl HitDensityReport {
    fn from_indices(hits: &[u64], n_max: u64, certified: bool, params: serde_json::Value) -> Self {
        let count_to = |n: u64| hits.partition_point(|&h| h <= n) as u64;
        let mut history: Vec<HitCheckpoint> = (0..64)
            .map(|e| 1u64 << e)
            .take_while(|&p| p < n_max)
            .chain(std::iter::once(n_max))
            .map(|n| {
                let h = count_to(n);
                HitCheckpoint {
                    n,
                    hits: h,
                    density: h as f64 / n as f64,
                }
            })
            .collect();
        history.dedup_by_key(|c| c.n);
        Self {
            n_max,
            hits: hits.len() as u64,
            density: hits.len() as f64 / n_max as f64,
            first_hits: hits.iter().take(10).copied().collect(),
            history,
            certified,
            params,
        }
    }

    /// Number of hits with index at most `n`, read from the history.
    pub fn hits_at(&self, n: u64) -> Option<u64> {
        self.history.iter().find(|c| c.n == n).map(|c| c.hits)
    }
}

fn check_range(domain: &EvalDomain, lo: f64, hi: f64) -> Result<(), ShiftError> {
    let t_needed = lo.abs().max(hi.abs());
    if t_needed > domain.t_max {
        return Err(ShiftError::DomainOverflow {
            t_needed,
            t_max: domain.t_max,
        });
    }
    Ok(())
}

/// Runs `keep(j_values)` over `n = 1..=n_max` in fixed chunks, where each
/// index `n` looks at heights `j = n..n+l-1` through a per-chunk cache.
fn scan_windows<V, F>(n_max: u64, l: u64, value: V, keep: F) -> Result<Vec<ShiftHit>, ShiftError>
where
    V: Fn(u64) -> Result<f64, ShiftError> + Sync,
    F: Fn(f64) -> bool + Sync,
{
    let chunks = n_max.div_ceil(CHUNK);
    let found: Vec<Vec<ShiftHit>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK + 1;
            let hi = ((c + 1) * CHUNK).min(n_max);
            let mut memo: HashMap<u64, f64> = HashMap::new();
            let mut out = Vec::new();
            'n: for n in lo..=hi {
                memo.retain(|&j, _| j >= n);
                let mut devs = Vec::with_capacity(l as usize);
                for j in n..n + l {
                    let v = match memo.get(&j) {
                        Some(&v) => v,
                        None => {
                            let v = value(j)?;
                            memo.insert(j, v);
                            v
                        }
                    };
                    if !keep(v) {
                        continue 'n;
                    }
                    devs.push(v);
                }
                let max_dev = devs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                out.push(ShiftHit {
                    n,
                    deviations: devs,
                    max_dev,
                });
            }
            Ok(out)
        })
        .collect::<Result<_, ShiftError>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// All `n ≤ n_max` with `|ζ(s + ih(k - 1) + ihn) - a| < ε` for every `k`.
pub fn scan_disk_hits(
    grid: &VerticalGrid,
    disk: &TargetDisk,
    n_max: u64,
    domain: &EvalDomain,
) -> Result<(Vec<ShiftHit>, HitDensityReport), ShiftError> {
    if n_max == 0 {
        return Err(ShiftError::InvalidArgument("N must be >= 1".into()));
    }
    let (lo, hi) = grid.height_range(n_max);
    check_range(domain, lo, hi)?;
    let line = ZetaLine::new(grid.s.re, *domain)?;
    let hits = scan_windows(
        n_max,
        grid.l,
        |j| Ok((line.eval(grid.height(j))? - disk.a).norm()),
        |dev| dev < disk.epsilon,
    )?;
    let indices: Vec<u64> = hits.iter().map(|h| h.n).collect();
    let params = json!({
        "operation": "scan_disk_hits",
        "grid": grid,
        "disk": disk,
        "domain": domain,
    });
    let report = HitDensityReport::from_indices(&indices, n_max, domain.is_certified(), params);
    Ok((hits, report))
}

/// Re-evaluates a stored hit pointwise. True when every recorded deviation is
/// reproduced exactly and stays below ε.
pub fn reverify_hit(grid: &VerticalGrid, disk: &TargetDisk, hit: &ShiftHit, domain: &EvalDomain) -> Result<bool, ShiftError> {
    let mut same = hit.deviations.len() as u64 == grid.l;
    for (k, &recorded) in hit.deviations.iter().enumerate() {
        let t = grid.height(hit.n + k as u64);
        let dev = (zeta_in(Complex64::new(grid.s.re, t), domain)? - disk.a).norm();
        same &= dev == recorded && dev < disk.epsilon;
    }
    Ok(same && hit.max_dev < disk.epsilon)
}

/// Bounds of the finite exclusion test attached to joint reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExclusionSettings {
    pub k_bound: i64,
    pub primes: Vec<u64>,
    pub exponent_bound: u32,
}

impl Default for ExclusionSettings {
    fn default() -> Self {
        Self {
            k_bound: 2,
            primes: vec![2, 3],
            exponent_bound: 1,
        }
    }
}

/// Shared parameters of the joint and σ_α scans.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointParams {
    pub t1: f64,
    pub t2: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub grid_pts: Vec<Complex64>,
    pub a1: Complex64,
    pub a2: Complex64,
    pub epsilon: f64,
}

impl JointParams {
    fn validate(&self) -> Result<(), ShiftError> {
        if self.a1 == Complex64::new(0.0, 0.0) || self.a2 == Complex64::new(0.0, 0.0) {
            return Err(ShiftError::VanishingTarget);
        }
        if !(self.delta1 > 0.0 && self.delta2 > 0.0 && self.epsilon > 0.0) {
            return Err(ShiftError::InvalidArgument("need delta1, delta2, epsilon > 0".into()));
        }
        if self.grid_pts.is_empty() || self.grid_pts.iter().any(|z| !(z.re > 0.5 && z.re < 1.0)) {
            return Err(ShiftError::InvalidGrid("grid points must be nonempty and lie in 1/2 < Re s < 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExclusionSummary {
    pub settings: ExclusionSettings,
    pub equations_checked: u64,
    pub witnesses: usize,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JointReport {
    pub density: HitDensityReport,
    pub exclusion: ExclusionSummary,
    pub caveat: &'static str,
}

/// One ζ line per distinct real part of the grid.
struct Lines {
    sigmas: Vec<f64>,
    lines: Vec<ZetaLine>,
}

impl Lines {
    fn new(points: &[Complex64], domain: &EvalDomain) -> Result<Self, ShiftError> {
        let mut sigmas: Vec<f64> = points.iter().map(|z| z.re).collect();
        sigmas.sort_by(f64::total_cmp);
        sigmas.dedup();
        let lines = sigmas
            .iter()
            .map(|&s| ZetaLine::new(s, *domain))
            .collect::<Result<_, _>>()?;
        Ok(Self { sigmas, lines })
    }

    fn eval(&self, z: Complex64) -> Result<Complex64, ShiftError> {
        let i = self
            .sigmas
            .binary_search_by(|v| v.total_cmp(&z.re))
            .expect("line tabulated");
        Ok(self.lines[i].eval(z.im)?)
    }

    /// `max_{z ∈ pts} |ζ(z + iτ) - a| < ε`, short-circuiting.
    fn within(&self, pts: &[Complex64], tau: f64, a: Complex64, eps: f64) -> Result<bool, ShiftError> {
        for &z in pts {
            if (self.eval(z + Complex64::new(0.0, tau))? - a).norm() >= eps {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn heights_span(pts: &[Complex64], lo: f64, hi: f64) -> (f64, f64) {
    let min_im = pts.iter().map(|z| z.im).fold(f64::INFINITY, f64::min);
    let max_im = pts.iter().map(|z| z.im).fold(f64::NEG_INFINITY, f64::max);
    (min_im + lo, max_im + hi)
}

fn summarize_exclusion(pair: &BeattyPair, p: &JointParams, settings: &ExclusionSettings) -> Result<ExclusionSummary, ShiftError> {
    let scan = exclusion_scan(
        p.delta1,
        p.delta2,
        pair.alpha,
        settings.k_bound,
        &settings.primes,
        settings.exponent_bound,
    )?;
    Ok(ExclusionSummary {
        settings: settings.clone(),
        equations_checked: scan.equations_checked,
        witnesses: scan.witnesses.len(),
        passes: scan.passes(),
    })
}

/// Indices `n ≤ n_max` where both shifted grids land in their disks: the
/// first shifted by `t₁ + δ₁ u(n)`, the second by `t₂ + δ₂ v(n)`.
fn paired_hits<U, V>(
    p: &JointParams,
    n_max: u64,
    domain: &EvalDomain,
    u: U,
    v: V,
) -> Result<Vec<u64>, ShiftError>
where
    U: Fn(u64) -> Result<u64, ShiftError> + Sync,
    V: Fn(u64) -> Result<u64, ShiftError> + Sync,
{
    let lines = Lines::new(&p.grid_pts, domain)?;
    let chunks = n_max.div_ceil(CHUNK);
    let found: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut out = Vec::new();
            for n in c * CHUNK + 1..=((c + 1) * CHUNK).min(n_max) {
                let tau1 = p.t1 + p.delta1 * u(n)? as f64;
                if !lines.within(&p.grid_pts, tau1, p.a1, p.epsilon)? {
                    continue;
                }
                let tau2 = p.t2 + p.delta2 * v(n)? as f64;
                if lines.within(&p.grid_pts, tau2, p.a2, p.epsilon)? {
                    out.push(n);
                }
            }
            Ok(out)
        })
        .collect::<Result<_, ShiftError>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Density of `n ≤ n_max` with both `ζ(s + i(t₁ + δ₁⌊nα⌋))` near `a₁` and
/// `ζ(s + i(t₂ + δ₂⌊nα'⌋))` near `a₂` on every grid point.
pub fn joint_beatty_hits(
    pair: &BeattyPair,
    params: &JointParams,
    n_max: u64,
    domain: &EvalDomain,
    exclusion: &ExclusionSettings,
) -> Result<JointReport, ShiftError> {
    params.validate()?;
    if n_max == 0 {
        return Err(ShiftError::InvalidArgument("N must be >= 1".into()));
    }
    let top1 = params.t1 + params.delta1 * pair.term(n_max)? as f64;
    let top2 = params.t2 + params.delta2 * pair.conjugate_term(n_max)? as f64;
    let (lo, hi) = heights_span(&params.grid_pts, params.t1.min(params.t2), top1.max(top2));
    check_range(domain, lo, hi)?;
    let hits = paired_hits(
        params,
        n_max,
        domain,
        |n| Ok(pair.term(n)?),
        |n| Ok(pair.conjugate_term(n)?),
    )?;
    let report = HitDensityReport::from_indices(
        &hits,
        n_max,
        domain.is_certified(),
        json!({
            "operation": "joint_beatty_hits",
            "alpha": pair.alpha,
            "alpha_prime": pair.alpha_prime,
            "joint": params,
            "domain": domain,
        }),
    );
    Ok(JointReport {
        density: report,
        exclusion: summarize_exclusion(pair, params, exclusion)?,
        caveat: JOINT_CAVEAT,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SisReport {
    pub density: HitDensityReport,
    /// Joint Beatty hits with `m ≤ N/α`, each of which yields a hit at `n = ⌊mα⌋`.
    pub joint_hits: u64,
    /// `joint_hits / N`, roughly `(1/α)` times the joint density.
    pub transferred_bound: f64,
    pub slack: f64,
    pub warning: Option<String>,
    pub exclusion: ExclusionSummary,
    pub caveat: &'static str,
}

/// Density of `n ≤ n_max` with `ζ(s + i(t₁ + δ₁n))` near `a₁` and
/// `ζ(s + i(t₂ + δ₂σ_α(n)))` near `a₂`, compared with the bound transferred
/// from the joint Beatty scan.
pub fn corollary_sis_density(
    pair: &BeattyPair,
    params: &JointParams,
    n_max: u64,
    domain: &EvalDomain,
    exclusion: &ExclusionSettings,
) -> Result<SisReport, ShiftError> {
    params.validate()?;
    if n_max == 0 {
        return Err(ShiftError::InvalidArgument("N must be >= 1".into()));
    }
    let images: Vec<u64> = (1..=n_max)
        .map(|n| sigma_alpha(pair, n))
        .collect::<Result<_, _>>()?;
    let top_image = images.iter().copied().max().unwrap_or(1);
    let top1 = params.t1 + params.delta1 * n_max as f64;
    let top2 = params.t2 + params.delta2 * top_image as f64;
    let (lo, hi) = heights_span(&params.grid_pts, params.t1.min(params.t2), top1.max(top2));
    check_range(domain, lo, hi)?;
    let hits = paired_hits(params, n_max, domain, Ok, |n| Ok(images[n as usize - 1]))?;

    let m_max = (n_max as f64 / pair.alpha).floor() as u64;
    let joint_hits = if m_max == 0 {
        0
    } else {
        paired_hits(
            params,
            m_max,
            domain,
            |m| Ok(pair.term(m)?),
            |m| Ok(pair.conjugate_term(m)?),
        )?
        .len() as u64
    };
    let transferred_bound = joint_hits as f64 / n_max as f64;
    let slack = 2.0 / (n_max as f64).sqrt();
    let density = HitDensityReport::from_indices(
        &hits,
        n_max,
        domain.is_certified(),
        json!({
            "operation": "corollary_sis_density",
            "alpha": pair.alpha,
            "alpha_prime": pair.alpha_prime,
            "joint": params,
            "domain": domain,
        }),
    );
    let warning = (density.density < transferred_bound - slack).then(|| {
        format!(
            "density {} is below the transferred bound {} by more than {}",
            density.density, transferred_bound, slack
        )
    });
    Ok(SisReport {
        density,
        joint_hits,
        transferred_bound,
        slack,
        warning,
        exclusion: summarize_exclusion(pair, params, exclusion)?,
        caveat: JOINT_CAVEAT,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlipReport {
    pub sigma: f64,
    pub r: f64,
    pub c: f64,
    /// `2r/c`, the threshold imposed on `|ζ(1 - s - iτ)|`.
    pub reflected_threshold: f64,
    pub predicted: HitDensityReport,
    /// Indices where direct evaluation gives `|ζ| > r` on the whole grid.
    pub direct_hits: u64,
    /// Predicted indices that direct evaluation rejects.
    pub disagreements: Vec<u64>,
}

/// Predicts `|ζ(s + ih(n + k - 1))| > r` from `|ζ(1 - s - ih(n + k - 1))| ≥ 2r/c`
/// and `|χ| ≥ c`, then checks every index directly.
pub fn left_half_flip(
    grid: &VerticalGrid,
    r: f64,
    chi: &ChiBoundReport,
    n_max: u64,
    domain: &EvalDomain,
) -> Result<FlipReport, ShiftError> {
    let sigma = grid.s.re;
    if !(sigma > 0.0 && sigma < 0.5) {
        return Err(ShiftError::InvalidGrid(format!("Re s = {sigma} not in (0, 1/2)")));
    }
    if !(r > 0.0) || n_max == 0 {
        return Err(ShiftError::InvalidArgument("need r > 0 and N >= 1".into()));
    }
    let (lo, hi) = grid.height_range(n_max);
    if chi.sigma != sigma || lo <= 0.0 || !chi.certifies(lo, hi) {
        return Err(ShiftError::ChiBoundUnavailable {
            sigma,
            t_from: lo,
            t_to: hi,
        });
    }
    check_range(domain, lo, hi)?;
    let c = chi.c;
    let threshold = 2.0 * r / c;

    // |ζ(1 - σ - it)| = |ζ(1 - σ + it)| by conjugate symmetry.
    let reflected = ZetaLine::new(1.0 - sigma, *domain)?;
    let direct = ZetaLine::new(sigma, *domain)?;
    let predicted = scan_windows(
        n_max,
        grid.l,
        |j| Ok(reflected.eval(grid.height(j))?.norm()),
        |m| m >= threshold,
    )?;
    let direct_hits = scan_windows(n_max, grid.l, |j| Ok(direct.eval(grid.height(j))?.norm()), |m| m > r)?;

    let direct_set: Vec<u64> = direct_hits.iter().map(|h| h.n).collect();
    let predicted_set: Vec<u64> = predicted.iter().map(|h| h.n).collect();
    let disagreements = predicted_set
        .iter()
        .copied()
        .filter(|n| direct_set.binary_search(n).is_err())
        .collect();
    let report = HitDensityReport::from_indices(
        &predicted_set,
        n_max,
        domain.is_certified(),
        json!({
            "operation": "left_half_flip",
            "grid": grid,
            "r": r,
            "chi_bound": chi,
            "domain": domain,
        }),
    );
    Ok(FlipReport {
        sigma,
        r,
        c,
        reflected_threshold: threshold,
        predicted: report,
        direct_hits: direct_set.len() as u64,
        disagreements,
    })
}

/// `CSV (n, max_dev)` rows for a hit list.
pub fn hits_to_csv(hits: &[ShiftHit]) -> String {
    let mut out = String::from("n,max_dev\n");
    for h in hits {
        out.push_str(&format!("{},{:.16e}\n", h.n, h.max_dev));
    }
    out
}
