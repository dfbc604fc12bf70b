//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does.

use std::f64::consts::{LN_2, PI};
use std::io::Write;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zeta_discrete::beatty::{rayleigh_partition_check, sigma_alpha, BeattyPair};
use zeta_discrete::cli;
use zeta_discrete::dirichlet_progressions::{
    BoundedCoeffFn, Permutation, Progression, UniquenessProblem, DEFAULT_PHI_TOL,
};
use zeta_discrete::equidistribution::{joint_beatty_weyl, weyl_sum, FrequencyVector, SequenceHypothesis};
use zeta_discrete::euler_product_model::{
    bergman_sup_bound, empirical_limit_theorem, mean_square_discrete, EulerError, MeanSquareMode, Rect,
    RectSamples, TruncationLevel,
};
use zeta_discrete::shift_search::{left_half_flip, reverify_hit, scan_disk_hits, TargetDisk, VerticalGrid};
use zeta_discrete::zeta_core::{chi_lower_bound_check, functional_equation_residual, zeta, EvalDomain};

type Outcome = Result<String, String>;

/// Number, name, runtime budget in seconds, check.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Euler–Maclaurin with twice the library's term budget and twelve
/// corrections, Bernoulli numbers from their recurrence.
fn oracle_zeta(s: Complex64) -> Complex64 {
    let mut b = [0.0f64; 25];
    b[0] = 1.0;
    for m in 1..=24usize {
        let mut acc = 0.0;
        let mut binom = 1.0;
        for (k, bk) in b.iter().enumerate().take(m) {
            acc += binom * bk;
            binom = binom * (m + 1 - k) as f64 / (k + 1) as f64;
        }
        b[m] = -acc / (m + 1) as f64;
    }
    let n = (4.0 * s.im.abs()).ceil().max(40.0) as usize;
    let mut sum = c(0.0, 0.0);
    for k in (1..n).rev() {
        sum += (-s * (k as f64).ln()).exp();
    }
    let nf = n as f64;
    let np = (-s * nf.ln()).exp();
    sum += np * nf / (s - 1.0) + np * 0.5;
    let mut fact = 1.0;
    let mut rising = s;
    for k in 1..=12 {
        let j = 2 * k;
        fact *= ((j - 1) * j) as f64;
        sum += rising * (-(s + (j - 1) as f64) * nf.ln()).exp() * (b[j] / fact);
        rising *= (s + (j - 1) as f64) * (s + j as f64);
    }
    sum
}

fn special_values() -> Outcome {
    let z2 = zeta(c(2.0, 0.0)).map_err(err)?;
    let z0 = zeta(c(0.0, 0.0)).map_err(err)?;
    let zh = zeta(c(0.5, 0.0)).map_err(err)?;
    let oh = oracle_zeta(c(0.5, 0.0));
    let e2 = (z2 - PI * PI / 6.0).norm();
    let e0 = (z0 + 0.5).norm();
    let eh = (zh - oh).norm();
    ensure(e2 < 1e-9 && e0 < 1e-9 && eh < 1e-9, format!("errors {e2:e}, {e0:e}, {eh:e}"))?;
    Ok(format!("|err| zeta(2) {e2:.1e}, zeta(0) {e0:.1e}, zeta(1/2) vs oracle {eh:.1e}"))
}

fn functional_equation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let domain = EvalDomain::default();
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let re = rng.random_range(-0.5..1.5);
        let im = rng.random_range(2.0..500.0) * if rng.random::<bool>() { 1.0 } else { -1.0 };
        worst = worst.max(functional_equation_residual(c(re, im), &domain).map_err(err)?);
    }
    ensure(worst < 1e-7, format!("max residual {worst:e}"))?;
    Ok(format!("max residual over 200 points {worst:.2e}"))
}

/// Constant `K` in `|log|χ| - (1/2 - σ) log(t/2π)| < K/t`, frozen from the
/// first measured run.
const CHI_ASYMPTOTIC_CONSTANT: f64 = 0.5;

fn chi_asymptotics() -> Outcome {
    let r = chi_lower_bound_check(0.25, 1e-3, (50.0, 2000.0), 19_500, &EvalDomain::default()).map_err(err)?;
    ensure(
        r.max_scaled_deviation < CHI_ASYMPTOTIC_CONSTANT,
        format!("max t·dev {} ≥ {CHI_ASYMPTOTIC_CONSTANT}", r.max_scaled_deviation),
    )?;
    Ok(format!("max t·|dev| = {:.4} < {CHI_ASYMPTOTIC_CONSTANT}", r.max_scaled_deviation))
}

fn rayleigh() -> Outcome {
    let mut parts = Vec::new();
    for (name, pair) in [("golden", BeattyPair::golden()), ("sqrt2", BeattyPair::sqrt2())] {
        let r = rayleigh_partition_check(&pair, 1_000_000).map_err(err)?;
        ensure(
            r.overlaps == 0 && r.gaps == 0,
            format!("{name}: {} overlaps, {} gaps", r.overlaps, r.gaps),
        )?;
        parts.push(format!("{name} {}+{}", r.count_alpha, r.count_alpha_prime));
    }
    Ok(format!("no overlaps or gaps up to 1e6 ({})", parts.join(", ")))
}

fn involution() -> Outcome {
    let pair = BeattyPair::golden();
    for n in 1..=100_000 {
        let back = sigma_alpha(&pair, sigma_alpha(&pair, n).map_err(err)?).map_err(err)?;
        ensure(back == n, format!("sigma(sigma({n})) = {back}"))?;
    }
    Ok("sigma(sigma(n)) = n for n <= 1e5".into())
}

fn uniqueness() -> Outcome {
    let p = UniquenessProblem::new(
        BoundedCoeffFn::one(),
        BoundedCoeffFn::one(),
        Progression::new(0.0, 1.0).map_err(err)?,
        Progression::new(0.0, 2.0).map_err(err)?,
        Permutation::Identity,
    );
    let cert = p
        .uniqueness_bound(1, 1000, DEFAULT_PHI_TOL)
        .map_err(err)?
        .ok_or("no certificate for the zeta pair")?;
    ensure(cert.n == 1 && cert.mu == 2, format!("certificate at n = {}, mu = {}", cert.n, cert.mu))?;
    let samples: Vec<Complex64> = (1..=20).map(|k| c(cert.b + 0.5 * k as f64, 7.0 * k as f64 - 70.0)).collect();
    let report = p.verify_distinct(&cert, &samples, 100_000).map_err(err)?;
    ensure(report.violations == 0, format!("{} of 20 samples violate", report.violations))?;

    let h = 2.0 * PI / LN_2;
    let resonant = UniquenessProblem::new(
        BoundedCoeffFn::powers_of_two(),
        BoundedCoeffFn::powers_of_two(),
        Progression::new(h, 1.0).map_err(err)?,
        Progression::new(0.0, 1.0).map_err(err)?,
        Permutation::Identity,
    );
    for n in 1..=100 {
        let w = resonant.find_mu(n, 10_000, DEFAULT_PHI_TOL).map_err(err)?;
        ensure(w.is_none(), format!("power-of-2 pair has mu = {:?} at n = {n}", w.map(|w| w.mu)))?;
    }
    ensure(
        resonant.uniqueness_bound(100, 10_000, DEFAULT_PHI_TOL).map_err(err)?.is_none(),
        "power-of-2 pair certified",
    )?;
    Ok(format!("mu = 2 at n = 1, b = {:.4}; 20/20 samples hold; power-of-2 pair has no mu", cert.b))
}

fn weyl() -> Outcome {
    let alpha = 2f64.sqrt();
    let r = weyl_sum(|n| alpha * n as f64, 1.0, 1_000_000, Some(&SequenceHypothesis::default())).map_err(err)?;
    let s = (PI * alpha).sin().abs();
    for cp in &r.trajectory {
        let ceiling = 1.0 / (cp.n as f64 * s);
        ensure(cp.magnitude <= ceiling * (1.0 + 1e-9), format!("N = {}: {} > {ceiling}", cp.n, cp.magnitude))?;
    }
    let freq = FrequencyVector::new(vec![(2, 1)], vec![], 1.0, 1.0).map_err(err)?;
    let j = joint_beatty_weyl(&BeattyPair::golden(), 0.0, 0.0, &freq, 1_000_000).map_err(err)?;
    ensure(j.sum_magnitude < 0.01, format!("joint |S_N|/N = {} at N = 1e6", j.sum_magnitude))?;
    ensure(j.stays_below(0.01, 1 << 14), "joint checkpoints rise above 0.01 after N = 2^14")?;
    Ok(format!(
        "sqrt2 within ceiling at {} checkpoints; joint golden {:.2e} at N = 1e6",
        r.trajectory.len(),
        j.sum_magnitude
    ))
}

fn mean_square() -> Outcome {
    let run = |m: usize, sigma: f64, n: u64| -> Result<f64, String> {
        let level = TruncationLevel::new(m).map_err(err)?;
        let h = SequenceHypothesis::default();
        Ok(mean_square_discrete(&level, sigma, |k| k as f64, n, MeanSquareMode::Pointwise, Some(&h))
            .map_err(err)?
            .value)
    };
    let (m5, m200) = (run(5, 0.75, 2000)?, run(200, 0.75, 2000)?);
    ensure(m200 < m5, format!("m = 200 gives {m200:e}, m = 5 gives {m5:e}"))?;
    let high = run(10_000, 0.9, 1000)?;
    ensure(
        high < 1e-4,
        format!("sigma = 0.9, m = 1e4, N = 1e3 gives {high:.4e}, not below 1e-4 (m = 5: {m5:.4e}, m = 200: {m200:.4e})"),
    )?;
    Ok(format!("m = 5: {m5:.4e} > m = 200: {m200:.4e}; sigma = 0.9: {high:.4e}"))
}

fn bergman() -> Outcome {
    let rect = Rect::new(0.6, 0.9, 10.0, 10.3).map_err(err)?;
    let points: Vec<Complex64> = (0..5)
        .flat_map(|i| (0..4).map(move |j| c(0.69 + 0.03 * i as f64, 10.105 + 0.03 * j as f64)))
        .collect();
    type F = fn(Complex64) -> Result<Complex64, EulerError>;
    let fs: [(&str, F); 4] = [
        ("1", |_| Ok(c(1.0, 0.0))),
        ("s", Ok),
        ("s^2", |z| Ok(z * z)),
        ("zeta", |z| zeta(z).map_err(EulerError::from)),
    ];
    let mut worst: f64 = 0.0;
    for (name, f) in fs {
        let samples = RectSamples::sample(rect, 1e-3, f).map_err(err)?;
        for &z in &points {
            let b = bergman_sup_bound(&samples, z).map_err(err)?;
            let v = f(z).map_err(err)?.norm();
            ensure(v <= b.conservative_bound, format!("{name} at {z}: |f| = {v} > {}", b.conservative_bound))?;
            worst = worst.max(v / b.conservative_bound);
        }
    }
    Ok(format!("80 checks hold, max |f|/bound = {worst:.3}"))
}

fn dense_hits() -> Outcome {
    let grid = VerticalGrid::new(c(0.75, 0.0), 1.0, 1).map_err(err)?;
    let disk = TargetDisk::new(c(1.0, 0.0), 0.6).map_err(err)?;
    // Shifts reach height 2e4; the scan runs past the certified range.
    let domain = EvalDomain::with_t_max(20_001.0).map_err(err)?;
    let (hits, _) = scan_disk_hits(&grid, &disk, 20_000, &domain).map_err(err)?;
    let at_n = hits.iter().filter(|h| h.n <= 10_000).count();
    let at_2n = hits.len();
    ensure(at_n > 0, "no hits up to 1e4")?;
    ensure(at_2n >= at_n, format!("hits(2e4) = {at_2n} < hits(1e4) = {at_n}"))?;
    for h in &hits {
        ensure(reverify_hit(&grid, &disk, h, &domain).map_err(err)?, format!("hit n = {} fails re-verification", h.n))?;
    }
    Ok(format!("hits(1e4) = {at_n}, hits(2e4) = {at_2n}, all re-verified"))
}

fn flip() -> Outcome {
    let domain = EvalDomain::default();
    let chi = chi_lower_bound_check(0.3, 1.5, (20.0, 10_000.0), 20_000, &domain).map_err(err)?;
    let t0 = chi.t0.ok_or("no t0 for |chi| >= 1.5")?;
    let grid = VerticalGrid::new_left(c(0.3, 50.0), 0.99, 2).map_err(err)?;
    ensure(grid.s.im >= t0, format!("grid starts below t0 = {t0}"))?;
    let r = left_half_flip(&grid, 1.0, &chi, 10_000, &domain).map_err(err)?;
    ensure(r.disagreements.is_empty(), format!("{} disagreements", r.disagreements.len()))?;
    ensure(r.predicted.hits > 0, "no predicted hits")?;
    Ok(format!(
        "t0 = {t0:.3}; {} predicted, {} direct, 0 disagreements",
        r.predicted.hits, r.direct_hits
    ))
}

/// KS threshold, frozen from the first measured run.
const KS_THRESHOLD: f64 = 0.05;

fn limit_theorem() -> Outcome {
    let level = TruncationLevel::new(50).map_err(err)?;
    let generic = empirical_limit_theorem(&level, 1.0, c(0.75, 0.0), 10_000, 10_000, 42).map_err(err)?;
    ensure(
        generic.max_ks() < KS_THRESHOLD,
        format!("generic KS {:.4} ≥ {KS_THRESHOLD}", generic.max_ks()),
    )?;
    let one = TruncationLevel::new(1).map_err(err)?;
    let resonant = empirical_limit_theorem(&one, 2.0 * PI / LN_2, c(0.75, 0.0), 10_000, 10_000, 42).map_err(err)?;
    ensure(
        resonant.max_ks() >= 5.0 * KS_THRESHOLD,
        format!("resonant KS {:.4} below {}", resonant.max_ks(), 5.0 * KS_THRESHOLD),
    )?;
    Ok(format!(
        "generic KS (re, im, log|.|) = ({:.4}, {:.4}, {:.4}); resonant max {:.4}",
        generic.ks_re,
        generic.ks_im,
        generic.ks_log_abs,
        resonant.max_ks()
    ))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("zeta-discrete-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let path = dir.join("report.json");
    let path_s = path.to_str().ok_or("non-UTF-8 temp path")?.to_string();
    let experiments: [&[&str]; 4] = [
        &["limit-theorem", "--seed", "42", "--m", "20", "--N", "2000", "--trials", "2000"],
        &["hits", "--N", "3000", "--l", "2"],
        &["weyl", "--N", "200000"],
        &["meansquare", "--m", "50", "--N", "300"],
    ];
    for args in experiments {
        let mut reports = Vec::new();
        for threads in ["1", "4", "1"] {
            let argv: Vec<String> = std::iter::once("zeta-discrete")
                .chain(args.iter().copied())
                .chain(["--threads", threads, "--output", &path_s])
                .map(String::from)
                .collect();
            let code = cli::run(&argv);
            ensure(code == cli::EXIT_OK, format!("{} exited with {code}", args[0]))?;
            reports.push(cli::strip_timestamp(&std::fs::read_to_string(&path).map_err(err)?));
        }
        ensure(
            reports.windows(2).all(|w| w[0] == w[1]),
            format!("{} reports differ across runs", args[0]),
        )?;
    }
    Ok("4 experiments byte-identical across 1, 4, 1 threads".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 13] = [
        (1, "special values", Some(1), special_values),
        (2, "functional equation", Some(5), functional_equation),
        (3, "chi asymptotics", Some(10), chi_asymptotics),
        (4, "Rayleigh dissection", Some(5), rayleigh),
        (5, "sigma involution", Some(5), involution),
        (6, "uniqueness bound", Some(10), uniqueness),
        (7, "Weyl decay", Some(30), weyl),
        (8, "mean-square approximation", Some(60), mean_square),
        (9, "Bergman bound", Some(30), bergman),
        (10, "dense hits", Some(120), dense_hits),
        (11, "left-half flip", Some(120), flip),
        (12, "empirical limit theorem", Some(60), limit_theorem),
        (13, "determinism", None, determinism),
    ];
    let mut failed = Vec::new();
    let mut err_out = std::io::stderr().lock();
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = budget.is_some_and(|b| elapsed > Duration::from_secs(b));
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over the {}s budget; {d}", budget.unwrap_or(0))),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed.push(id);
        }
        writeln!(
            err_out,
            "acceptance {id:>2} {status} [{:>7.2}s] {name}: {detail}",
            elapsed.as_secs_f64()
        )
        .unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
