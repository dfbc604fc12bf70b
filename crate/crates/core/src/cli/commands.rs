//! Subcommand table and the mapping from resolved parameters to module calls.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use super::CliError;
use crate::beatty::{self, exclusion_scan, partition_rows, rayleigh_partition_check, BeattyPair};
use crate::dirichlet_progressions::{BoundedCoeffFn, Permutation, Progression, UniquenessProblem};
use crate::equidistribution::{joint_beatty_weyl, star_discrepancy, weyl_sum, FrequencyVector, SequenceHypothesis};
use crate::euler_product_model::{
    bergman_sup_bound, empirical_limit_theorem, mean_square_discrete, MeanSquareMode, Rect, RectSamples,
    TruncationLevel,
};
use crate::shift_search::{
    corollary_sis_density, hits_to_csv, joint_beatty_hits, left_half_flip, scan_disk_hits, ExclusionSettings,
    JointParams, TargetDisk, VerticalGrid,
};
use crate::zeta_core::{
    chi_in, chi_lower_bound_check, em_term_count, hardy_z, log_chi, theta, zeta_in, EvalDomain,
};

pub struct ParamSpec {
    pub name: &'static str,
    /// `None` marks a required parameter.
    pub default: Option<&'static str>,
    pub help: &'static str,
}

pub struct CommandSpec {
    pub name: &'static str,
    pub about: &'static str,
    pub params: &'static [ParamSpec],
    /// Random experiments refuse to run on the default seed.
    pub needs_seed: bool,
}

const fn p(name: &'static str, default: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        default: Some(default),
        help,
    }
}

const JOINT: &[ParamSpec] = &[
    p("alpha", "golden", "Beatty parameter: golden, sqrt2, sqrt3, e-1 or a number > 1"),
    p("t1", "0", "offset of the first progression"),
    p("t2", "0", "offset of the second progression"),
    p("delta1", "1", "step of the first progression"),
    p("delta2", "1", "step of the second progression"),
    p("points", "0.8:0", "grid points re:im separated by ';'"),
    p("a1-re", "1", "first target, real part"),
    p("a1-im", "0", "first target, imaginary part"),
    p("a2-re", "1", "second target, real part"),
    p("a2-im", "0", "second target, imaginary part"),
    p("eps", "0.7", "disk radius"),
    p("N", "10000", "scan bound"),
    p("t-max", "30000", "largest |Im s| evaluated"),
    p("k-bound", "2", "exclusion scan: bound on |k_i|"),
    p("primes", "2,3", "exclusion scan: primes building q"),
    p("exponents", "1", "exclusion scan: bound on prime exponents"),
];

pub const COMMANDS: &[CommandSpec] = &[
    CommandSpec {
        name: "zeta",
        about: "Evaluate zeta(s)",
        params: &[
            p("re", "2", "real part of s"),
            p("im", "0", "imaginary part of s"),
            p("t-max", "10000", "largest |Im s| accepted"),
        ],
        needs_seed: false,
    },
    CommandSpec {
        name: "chi",
        about: "Evaluate the functional-equation factor chi(s)",
        params: &[
            p("re", "0.25", "real part of s"),
            p("im", "100", "imaginary part of s"),
            p("t-max", "10000", "largest |Im s| accepted"),
        ],
        needs_seed: false,
    },
    CommandSpec {
        name: "ztheta",
        about: "Evaluate theta(t) and Hardy's Z(t)",
        params: &[p("t", "20", "height t >= 2")],
        needs_seed: false,
    },
    CommandSpec {
        name: "uniqueness",
        about: "Uniqueness bound for Dirichlet series along two progressions",
        params: &[
            p("f1", "one", "first coefficients: one, zero, powers_of_two, liouville"),
            p("f2", "one", "second coefficients"),
            p("t1", "0", "offset of the first progression"),
            p("t2", "0", "offset of the second progression"),
            p("delta1", "1", "step of the first progression"),
            p("delta2", "2", "step of the second progression"),
            p("perm", "identity", "identity, swap:a:b, table:i,j,..., beatty:ALPHA"),
            p("n-max", "20", "indices scanned"),
            p("m-max", "1000", "coefficient indices scanned per n"),
            p("tol", "1e-12", "threshold for a nonzero coefficient difference"),
            p("samples", "20", "points beyond b used for verification"),
            p("terms", "10000", "Dirichlet series terms per verification point"),
        ],
        needs_seed: false,
    },
    CommandSpec {
        name: "beatty",
        about: "Beatty dissection check and finite exclusion scan",
        params: &[
            p("alpha", "golden", "golden, sqrt2, sqrt3, e-1 or a number > 1"),
            p("check", "1000", "partition checked on 1..=check"),
            p("k-bound", "0", "exclusion scan bound on |k_i|; 0 skips the scan"),
            p("delta1", "1", "exclusion scan delta_1"),
            p("delta2", "1", "exclusion scan delta_2"),
            p("primes", "2,3", "exclusion scan primes"),
            p("exponents", "2", "exclusion scan exponent bound"),
        ],
        needs_seed: false,
    },
    CommandSpec {
        name: "weyl",
        about: "Weyl sums of n*alpha or of the joint Beatty sequence",
        params: &[
            p("kind", "linear", "linear (x_n = n*alpha) or joint"),
            p("alpha", "sqrt2", "golden, sqrt2, sqrt3, e-1 or a number"),
            p("freq", "1", "frequency for the linear sum"),
            p("N", "1000000", "number of terms"),
            p("check-hypotheses", "true", "refuse sequences outside the shift hypotheses"),
            p("discrepancy", "false", "also report the star discrepancy of {n*alpha}"),
            p("primes1", "2:1", "joint: weights p:k on the first line"),
            p("primes2", "", "joint: weights p:k on the second line"),
            p("delta1", "1", "joint: delta_1"),
            p("delta2", "1", "joint: delta_2"),
            p("t1", "0", "joint: t_1"),
            p("t2", "0", "joint: t_2"),
        ],
        needs_seed: false,
    },
    CommandSpec {
        name: "meansquare",
        about: "Discrete mean square of zeta - zeta_m along shifts x_n = h*n",
        params: &[
            p("m", "200", "number of primes in the truncated product"),
            p("sigma", "0.75", "real part, in (1/2, 1)"),
            p("h", "1", "shift step"),
            p("N", "2000", "number of shifts"),
            p("mode", "pointwise", "pointwise or sup"),
            p("rect", "0.7,0.8,0,0.1", "sup mode rectangle re_min,re_max,im_min,im_max"),
            p("step", "0.01", "sup mode lattice step"),
            p("check-hypotheses", "true", "refuse shift sequences outside the hypotheses"),
        ],
        needs_seed: false,
    },
    CommandSpec {
        name: "limit-theorem",
        about: "KS distances between shifted and random Euler products",
        params: &[
            p("m", "50", "number of primes"),
            p("h", "1", "shift step"),
            p("sigma", "0.75", "real part of s0"),
            p("im", "0", "imaginary part of s0"),
            p("N", "10000", "number of shifts"),
            p("trials", "10000", "number of random products"),
        ],
        needs_seed: true,
    },
    CommandSpec {
        name: "hits",
        about: "Shifts n moving zeta on a vertical grid into a disk",
        params: &[
            p("sigma", "0.75", "real part of the grid"),
            p("im", "0", "imaginary part of the first grid point"),
            p("h", "1", "grid and shift step"),
            p("l", "1", "number of grid points"),
            p("a-re", "1", "disk center, real part"),
            p("a-im", "0", "disk center, imaginary part"),
            p("eps", "0.6", "disk radius"),
            p("N", "10000", "scan bound"),
            p("t-max", "10000", "largest |Im s| evaluated"),
        ],
        needs_seed: false,
    },
    CommandSpec {
        name: "joint-hits",
        about: "Joint hits along the two Beatty progressions",
        params: JOINT,
        needs_seed: false,
    },
    CommandSpec {
        name: "sis",
        about: "Hits along t1+delta1*n and t2+delta2*sigma_alpha(n)",
        params: JOINT,
        needs_seed: false,
    },
    CommandSpec {
        name: "flip",
        about: "Left-half hits predicted through the functional equation",
        params: &[
            p("sigma", "0.3", "real part, in (0, 1/2)"),
            p("im", "50", "imaginary part of the first grid point"),
            p("h", "0.99", "grid and shift step"),
            p("l", "2", "number of grid points"),
            p("r", "1", "radius to exceed"),
            p("c", "1.5", "claimed lower bound for |chi|"),
            p("N", "10000", "scan bound"),
            p("chi-from", "20", "start of the |chi| scan"),
            p("chi-steps", "20000", "grid steps of the |chi| scan"),
            p("t-max", "10000", "largest |Im s| evaluated"),
        ],
        needs_seed: false,
    },
    CommandSpec {
        name: "bergman",
        about: "Bergman-space bound for |f(z)| on a rectangle",
        params: &[
            p("f", "zeta", "one, s, s2 or zeta"),
            p("rect", "0.6,0.9,20,20.3", "re_min,re_max,im_min,im_max"),
            p("step", "0.001", "quadrature step"),
            p("z-re", "0.75", "point, real part"),
            p("z-im", "20.15", "point, imaginary part"),
        ],
        needs_seed: false,
    },
];

pub fn spec(name: &str) -> Option<&'static CommandSpec> {
    COMMANDS.iter().find(|c| c.name == name)
}

/// Parameters after defaults, config file and flags have been merged.
pub struct Params<'a> {
    values: &'a BTreeMap<String, String>,
}

impl<'a> Params<'a> {
    pub fn new(values: &'a BTreeMap<String, String>) -> Self {
        Self { values }
    }

    fn raw(&self, key: &str) -> Result<&'a str, CliError> {
        self.values
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CliError::Usage(format!("missing parameter `{key}`")))
    }

    fn bad(key: &str, value: &str, what: &str) -> CliError {
        CliError::Usage(format!("parameter `{key}` = `{value}` is not {what}"))
    }

    pub fn f64(&self, key: &str) -> Result<f64, CliError> {
        let v = self.raw(key)?;
        v.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Self::bad(key, v, "a finite number"))
    }

    pub fn u64(&self, key: &str) -> Result<u64, CliError> {
        let v = self.raw(key)?;
        if let Ok(n) = v.parse::<u64>() {
            return Ok(n);
        }
        match v.parse::<f64>() {
            Ok(x) if x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(53) => Ok(x as u64),
            _ => Err(Self::bad(key, v, "a non-negative integer")),
        }
    }

    pub fn bool(&self, key: &str) -> Result<bool, CliError> {
        let v = self.raw(key)?;
        v.parse().map_err(|_| Self::bad(key, v, "true or false"))
    }

    pub fn str(&self, key: &str) -> Result<&'a str, CliError> {
        self.raw(key)
    }

    pub fn alpha(&self, key: &str) -> Result<f64, CliError> {
        let v = self.raw(key)?;
        beatty::resolve_alpha(v).ok_or_else(|| Self::bad(key, v, "a named surrogate or number"))
    }

    pub fn complex(&self, re: &str, im: &str) -> Result<Complex64, CliError> {
        Ok(Complex64::new(self.f64(re)?, self.f64(im)?))
    }

    pub fn list<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>, CliError> {
        let v = self.raw(key)?;
        v.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| Self::bad(key, v, "a comma-separated list")))
            .collect()
    }

    fn rect(&self, key: &str) -> Result<Rect, CliError> {
        let v: Vec<f64> = self.list(key)?;
        if v.len() != 4 {
            return Err(Self::bad(key, self.raw(key)?, "four numbers"));
        }
        Ok(Rect::new(v[0], v[1], v[2], v[3])?)
    }

    fn weights(&self, key: &str) -> Result<Vec<(u64, i64)>, CliError> {
        let v = self.raw(key)?;
        v.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|item| {
                let (p, k) = item.split_once(':').ok_or_else(|| Self::bad(key, v, "a list of p:k"))?;
                Ok((
                    p.parse().map_err(|_| Self::bad(key, v, "a list of p:k"))?,
                    k.parse().map_err(|_| Self::bad(key, v, "a list of p:k"))?,
                ))
            })
            .collect()
    }

    fn points(&self, key: &str) -> Result<Vec<Complex64>, CliError> {
        let v = self.raw(key)?;
        v.split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|item| {
                let (re, im) = item.split_once(':').unwrap_or((item, "0"));
                match (re.parse(), im.parse()) {
                    (Ok(re), Ok(im)) => Ok(Complex64::new(re, im)),
                    _ => Err(Self::bad(key, v, "a list of re:im points")),
                }
            })
            .collect()
    }

    fn domain(&self) -> Result<EvalDomain, CliError> {
        Ok(EvalDomain::with_t_max(self.f64("t-max")?)?)
    }
}

/// What a command produced: the JSON result and, where the command has a
/// natural table, its CSV rendering.
pub struct Outcome {
    pub result: Value,
    pub csv: Option<String>,
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn coefficient(name: &str) -> Result<BoundedCoeffFn, CliError> {
    match name {
        "one" => Ok(BoundedCoeffFn::one()),
        "zero" => Ok(BoundedCoeffFn::zero()),
        "powers_of_two" => Ok(BoundedCoeffFn::powers_of_two()),
        "liouville" => Ok(BoundedCoeffFn::liouville()),
        other => Err(CliError::Usage(format!("unknown coefficient function `{other}`"))),
    }
}

fn permutation(text: &str) -> Result<Permutation, CliError> {
    let bad = || CliError::Usage(format!("cannot parse permutation `{text}`"));
    if text == "identity" {
        return Ok(Permutation::Identity);
    }
    if let Some(rest) = text.strip_prefix("swap:") {
        let (a, b) = rest.split_once(':').ok_or_else(bad)?;
        return Ok(Permutation::transposition(
            a.parse().map_err(|_| bad())?,
            b.parse().map_err(|_| bad())?,
        )?);
    }
    if let Some(rest) = text.strip_prefix("table:") {
        let t: Result<Vec<u64>, _> = rest.split(',').map(|s| s.trim().parse()).collect();
        return Ok(Permutation::table(t.map_err(|_| bad())?)?);
    }
    if let Some(rest) = text.strip_prefix("beatty:") {
        let alpha = beatty::resolve_alpha(rest).ok_or_else(bad)?;
        return Ok(Permutation::Beatty(BeattyPair::new(alpha)?));
    }
    Err(bad())
}

fn joint_params(p: &Params) -> Result<(BeattyPair, JointParams, ExclusionSettings), CliError> {
    let pair = BeattyPair::new(p.alpha("alpha")?)?;
    let params = JointParams {
        t1: p.f64("t1")?,
        t2: p.f64("t2")?,
        delta1: p.f64("delta1")?,
        delta2: p.f64("delta2")?,
        grid_pts: p.points("points")?,
        a1: p.complex("a1-re", "a1-im")?,
        a2: p.complex("a2-re", "a2-im")?,
        epsilon: p.f64("eps")?,
    };
    let exclusion = ExclusionSettings {
        k_bound: p.u64("k-bound")? as i64,
        primes: p.list("primes")?,
        exponent_bound: p.u64("exponents")? as u32,
    };
    Ok((pair, params, exclusion))
}

pub fn execute(command: &str, p: &Params, seed: u64) -> Result<Outcome, CliError> {
    let outcome = |result: Value| Ok(Outcome { result, csv: None });
    match command {
        "zeta" => {
            let d = p.domain()?;
            let s = p.complex("re", "im")?;
            let v = zeta_in(s, &d)?;
            outcome(json!({ "s": complex_json(s), "value": complex_json(v), "certified": d.is_certified() }))
        }
        "chi" => {
            let d = p.domain()?;
            let s = p.complex("re", "im")?;
            let v = chi_in(s, &d)?;
            let log_abs = if v.norm() > 0.0 { Some(log_chi(s)?.re) } else { None };
            outcome(json!({ "s": complex_json(s), "value": complex_json(v), "log_abs": log_abs }))
        }
        "ztheta" => {
            let t = p.f64("t")?;
            outcome(json!({ "t": t, "theta": theta(t)?, "z": hardy_z(t)? }))
        }
        "uniqueness" => {
            let problem = UniquenessProblem::new(
                coefficient(p.str("f1")?)?,
                coefficient(p.str("f2")?)?,
                Progression::new(p.f64("t1")?, p.f64("delta1")?)?,
                Progression::new(p.f64("t2")?, p.f64("delta2")?)?,
                permutation(p.str("perm")?)?,
            );
            let cert = problem.uniqueness_bound(p.u64("n-max")?, p.u64("m-max")?, p.f64("tol")?)?;
            let verification = match &cert {
                Some(c) => {
                    let k = p.u64("samples")?.max(1);
                    let pts: Vec<Complex64> = (1..=k)
                        .map(|i| Complex64::new(c.b + 10.0 * i as f64 / k as f64, i as f64))
                        .collect();
                    Some(problem.verify_distinct(c, &pts, p.u64("terms")?)?)
                }
                None => None,
            };
            outcome(json!({ "certificate": to_value(&cert)?, "verification": to_value(&verification)? }))
        }
        "beatty" => {
            let pair = BeattyPair::new(p.alpha("alpha")?)?;
            let n_max = p.u64("check")?;
            let report = rayleigh_partition_check(&pair, n_max)?;
            let k_bound = p.u64("k-bound")? as i64;
            let scan = if k_bound > 0 {
                Some(exclusion_scan(
                    p.f64("delta1")?,
                    p.f64("delta2")?,
                    pair.alpha,
                    k_bound,
                    &p.list::<u64>("primes")?,
                    p.u64("exponents")? as u32,
                )?)
            } else {
                None
            };
            let mut csv = String::from("value,class,m\n");
            for r in partition_rows(&pair, n_max)? {
                let class = match r.class {
                    beatty::BeattyClass::Alpha => "alpha",
                    beatty::BeattyClass::AlphaPrime => "alpha_prime",
                };
                csv.push_str(&format!("{},{},{}\n", r.value, class, r.m));
            }
            Ok(Outcome {
                result: json!({
                    "partition": to_value(&report)?,
                    "violations": report.violations(),
                    "exclusion_scan": to_value(&scan)?,
                }),
                csv: Some(csv),
            })
        }
        "weyl" => {
            let n = p.u64("N")?;
            let report = match p.str("kind")? {
                "linear" => {
                    let alpha = p.alpha("alpha")?;
                    let h = SequenceHypothesis::default();
                    let hyp = p.bool("check-hypotheses")?.then_some(&h);
                    weyl_sum(|k| k as f64 * alpha, p.f64("freq")?, n, hyp)?
                }
                "joint" => {
                    let pair = BeattyPair::new(p.alpha("alpha")?)?;
                    let freq =
                        FrequencyVector::new(p.weights("primes1")?, p.weights("primes2")?, p.f64("delta1")?, p.f64("delta2")?)?;
                    joint_beatty_weyl(&pair, p.f64("t1")?, p.f64("t2")?, &freq, n)?
                }
                other => return Err(CliError::Usage(format!("unknown weyl kind `{other}`"))),
            };
            let discrepancy = if p.bool("discrepancy")? {
                let alpha = p.alpha("alpha")?;
                let pts: Vec<f64> = (1..=n).map(|k| k as f64 * alpha).collect();
                Some(star_discrepancy(&pts)?)
            } else {
                None
            };
            Ok(Outcome {
                csv: Some(report.to_csv()),
                result: json!({ "weyl": to_value(&report)?, "star_discrepancy": discrepancy }),
            })
        }
        "meansquare" => {
            let level = TruncationLevel::new(p.u64("m")? as usize)?;
            let h_step = p.f64("h")?;
            let mode = match p.str("mode")? {
                "pointwise" => MeanSquareMode::Pointwise,
                "sup" => MeanSquareMode::SupOnGrid {
                    rect: p.rect("rect")?,
                    step: p.f64("step")?,
                },
                other => return Err(CliError::Usage(format!("unknown mode `{other}`"))),
            };
            let h = SequenceHypothesis::default();
            let hyp = p.bool("check-hypotheses")?.then_some(&h);
            let stat = mean_square_discrete(&level, p.f64("sigma")?, |n| h_step * n as f64, p.u64("N")?, mode, hyp)?;
            outcome(to_value(&stat)?)
        }
        "limit-theorem" => {
            let level = TruncationLevel::new(p.u64("m")? as usize)?;
            let r = empirical_limit_theorem(
                &level,
                p.f64("h")?,
                p.complex("sigma", "im")?,
                p.u64("N")?,
                p.u64("trials")?,
                seed,
            )?;
            outcome(json!({ "report": to_value(&r)?, "max_ks": r.max_ks() }))
        }
        "hits" => {
            let grid = VerticalGrid::new(p.complex("sigma", "im")?, p.f64("h")?, p.u64("l")?)?;
            let disk = TargetDisk::new(p.complex("a-re", "a-im")?, p.f64("eps")?)?;
            let (hits, report) = scan_disk_hits(&grid, &disk, p.u64("N")?, &p.domain()?)?;
            Ok(Outcome {
                result: to_value(&report)?,
                csv: Some(hits_to_csv(&hits)),
            })
        }
        "joint-hits" => {
            let (pair, params, excl) = joint_params(p)?;
            let r = joint_beatty_hits(&pair, &params, p.u64("N")?, &p.domain()?, &excl)?;
            outcome(to_value(&r)?)
        }
        "sis" => {
            let (pair, params, excl) = joint_params(p)?;
            let r = corollary_sis_density(&pair, &params, p.u64("N")?, &p.domain()?, &excl)?;
            outcome(to_value(&r)?)
        }
        "flip" => {
            let d = p.domain()?;
            let grid = VerticalGrid::new_left(p.complex("sigma", "im")?, p.f64("h")?, p.u64("l")?)?;
            let n = p.u64("N")?;
            let top = grid.s.im + grid.h * (n + grid.l - 1) as f64;
            let chi = chi_lower_bound_check(
                grid.s.re,
                p.f64("c")?,
                (p.f64("chi-from")?, top),
                p.u64("chi-steps")? as usize,
                &d,
            )?;
            let r = left_half_flip(&grid, p.f64("r")?, &chi, n, &d)?;
            outcome(to_value(&r)?)
        }
        "bergman" => {
            let rect = p.rect("rect")?;
            let f_name = p.str("f")?.to_string();
            let f = move |z: Complex64| -> Result<Complex64, crate::euler_product_model::EulerError> {
                Ok(match f_name.as_str() {
                    "one" => Complex64::new(1.0, 0.0),
                    "s" => z,
                    "s2" => z * z,
                    _ => crate::zeta_core::zeta(z)?,
                })
            };
            if !["one", "s", "s2", "zeta"].contains(&p.str("f")?) {
                return Err(CliError::Usage(format!("unknown function `{}`", p.str("f")?)));
            }
            let z = p.complex("z-re", "z-im")?;
            let samples = RectSamples::sample(rect, p.f64("step")?, &f)?;
            let bound = bergman_sup_bound(&samples, z)?;
            let value = f(z)?.norm();
            outcome(json!({
                "bound": to_value(&bound)?,
                "abs_f": value,
                "holds": value <= bound.conservative_bound,
            }))
        }
        other => Err(CliError::Usage(format!("unknown command `{other}`"))),
    }
}

/// Rough cost of a run, for `--dry-run`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostEstimate {
    pub zeta_evaluations: u64,
    /// Σ over ζ evaluations of the Euler–Maclaurin term count.
    pub series_terms: f64,
    pub other_operations: f64,
}

pub fn estimate(command: &str, p: &Params) -> Result<CostEstimate, CliError> {
    let terms_to = |t: f64, count: u64| count as f64 * em_term_count(t) as f64 / 2.0;
    let mut c = CostEstimate {
        zeta_evaluations: 0,
        series_terms: 0.0,
        other_operations: 0.0,
    };
    match command {
        "zeta" | "chi" => {
            c.zeta_evaluations = 1;
            c.series_terms = em_term_count(p.f64("im")?) as f64;
        }
        "ztheta" => {
            c.zeta_evaluations = 1;
            c.series_terms = em_term_count(p.f64("t")?) as f64;
        }
        "uniqueness" => {
            c.other_operations = (p.u64("n-max")? * p.u64("m-max")? + 2 * p.u64("samples")? * p.u64("terms")?) as f64;
        }
        "beatty" => {
            let k = p.u64("k-bound")? as f64;
            c.other_operations = 2.0 * p.u64("check")? as f64 + (2.0 * k + 1.0).powi(4);
        }
        "weyl" => c.other_operations = p.u64("N")? as f64,
        "meansquare" => {
            let n = p.u64("N")?;
            let t = p.f64("h")? * n as f64;
            c.zeta_evaluations = n;
            c.series_terms = terms_to(t, n);
            c.other_operations = (n * p.u64("m")?) as f64;
        }
        "limit-theorem" => {
            c.other_operations = ((p.u64("N")? + p.u64("trials")?) * p.u64("m")?) as f64;
        }
        "hits" => {
            let n = p.u64("N")?;
            let t = p.f64("im")? + p.f64("h")? * (n + p.u64("l")?) as f64;
            c.zeta_evaluations = n + p.u64("l")?;
            c.series_terms = terms_to(t, c.zeta_evaluations);
        }
        "joint-hits" | "sis" => {
            let n = p.u64("N")?;
            let pts = p.points("points")?.len() as u64;
            let t = p.f64("t1")?.max(p.f64("t2")?) + 3.0 * n as f64 * p.f64("delta1")?.max(p.f64("delta2")?);
            c.zeta_evaluations = 2 * n * pts;
            c.series_terms = terms_to(t, c.zeta_evaluations);
        }
        "flip" => {
            let n = p.u64("N")?;
            let t = p.f64("im")? + p.f64("h")? * (n + p.u64("l")?) as f64;
            c.zeta_evaluations = 2 * (n + p.u64("l")?);
            c.series_terms = terms_to(t, c.zeta_evaluations);
            c.other_operations = p.u64("chi-steps")? as f64;
        }
        "bergman" => {
            let r = p.rect("rect")?;
            let step = p.f64("step")?;
            let cells = ((r.re_max - r.re_min) / step) * ((r.im_max - r.im_min) / step) * 1.25;
            if p.str("f")? == "zeta" {
                c.zeta_evaluations = cells as u64;
                c.series_terms = cells * em_term_count(r.im_max) as f64;
            } else {
                c.other_operations = cells;
            }
        }
        _ => {}
    }
    Ok(c)
}
