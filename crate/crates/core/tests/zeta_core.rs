//! Oracle checks for the zeta_core module. The oracles here are deliberately
//! written from scratch and share no code with the library.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use zeta_discrete::zeta_core::{
    chi, functional_equation_residual, hardy_z, log_chi, log_gamma, theta, zeta, zeta_with_terms,
    EvalDomain,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Bernoulli numbers B_0..B_{2k} from the standard recurrence.
fn bernoulli(n_max: usize) -> Vec<f64> {
    let mut b = vec![0.0; n_max + 1];
    b[0] = 1.0;
    for m in 1..=n_max {
        let mut acc = 0.0;
        let mut binom = 1.0; // C(m+1, k)
        for (k, bk) in b.iter().enumerate().take(m) {
            acc += binom * bk;
            binom = binom * (m + 1 - k) as f64 / (k + 1) as f64;
        }
        b[m] = -acc / (m + 1) as f64;
    }
    b
}

/// Euler–Maclaurin with a doubled term budget and twelve corrections,
/// summed in reverse order.
fn oracle_zeta(s: Complex64) -> Complex64 {
    let n = (4.0 * s.im.abs()).ceil().max(40.0) as usize;
    let b = bernoulli(24);
    let mut sum = Complex64::new(0.0, 0.0);
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

/// Binet's second formula by composite Simpson quadrature (Re z > 0).
fn oracle_log_gamma(z: Complex64) -> Complex64 {
    let upper = 12.0;
    let steps = 40_000;
    let h = upper / steps as f64;
    let f = |t: f64| -> Complex64 {
        if t == 0.0 {
            (2.0 * PI * z).inv()
        } else {
            (Complex64::new(t, 0.0) / z).atan() / ((2.0 * PI * t).exp() - 1.0)
        }
    };
    let mut acc = f(0.0) + f(upper);
    for k in 1..steps {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += f(k as f64 * h) * w;
    }
    let integral = acc * (h / 3.0);
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + 2.0 * integral
}

#[test]
fn oracle_self_check() {
    assert!((oracle_zeta(c(2.0, 0.0)) - PI * PI / 6.0).norm() < 1e-13);
    assert!((oracle_log_gamma(c(5.0, 0.0)) - 24f64.ln()).norm() < 1e-12);
}

#[test]
fn zeta_special_values() {
    assert!((zeta(c(2.0, 0.0)).unwrap() - PI * PI / 6.0).norm() < 1e-9);
    assert!((zeta(c(0.0, 0.0)).unwrap() + 0.5).norm() < 1e-9);
    // ζ(1/2) = -1.4603545088095868128894991525... (mpmath, 30 digits)
    let half = zeta(c(0.5, 0.0)).unwrap();
    let oracle = oracle_zeta(c(0.5, 0.0));
    assert!((half - oracle).norm() < 1e-9);
    assert!((half.re + 1.4603545088095868).abs() < 1e-9);
}

#[test]
fn zeta_against_oracle_across_strip() {
    for &(re, im) in &[
        (0.5, 20.0),
        (0.75, 333.3),
        (-0.9, 50.0),
        (1.3, -77.0),
        (0.2, 2500.0),
        (5.5, 9000.0),
        (0.5, 9999.0),
    ] {
        let s = c(re, im);
        let d = (zeta(s).unwrap() - oracle_zeta(s)).norm();
        assert!(d < 1e-9, "s = {s}: |diff| = {d:e}");
    }
    // mpmath references, including the worst corner of the certified domain.
    let corner = zeta(c(-0.99, 9999.0)).unwrap();
    assert!((corner - c(2050.613177280477, 72394.11166244438)).norm() < 1e-9);
    let mid = zeta(c(0.0, 8876.82857424416)).unwrap();
    assert!((mid - c(-40.390672208789205, -12.80129965104524)).norm() < 1e-9);
    let z20 = zeta(c(0.5, 20.0)).unwrap();
    assert!((z20 - c(0.42991386043784337, -1.0642914430805891)).norm() < 1e-9);
}

#[test]
fn log_gamma_against_quadrature() {
    let z = c(0.5, 10.0);
    let lg = log_gamma(z).unwrap();
    let q = oracle_log_gamma(z);
    assert!((lg - q).norm() < 1e-10, "{lg} vs {q}");
    // mpmath loggamma(0.5+10j)
    assert!((lg - c(-14.789024734744293, 13.030020034911099)).norm() < 1e-10);
    for &(re, im) in &[(0.3, 1.0), (2.0, 55.0), (0.75, -4.0)] {
        let z = c(re, im);
        assert!((log_gamma(z).unwrap() - oracle_log_gamma(z)).norm() < 1e-10, "{z}");
    }
}

#[test]
fn chi_examples() {
    assert!((chi(c(0.5, 20.0)).unwrap().norm() - 1.0).abs() < 1e-10);
    assert!((chi(c(0.5, 0.0)).unwrap() - 1.0).norm() < 1e-10);
    let lc = log_chi(c(0.25, 100.0)).unwrap().re;
    assert!((lc - 0.25 * (100.0 / (2.0 * PI)).ln()).abs() < 0.02);
}

#[test]
fn functional_equation_examples() {
    let d = EvalDomain::default();
    assert!(functional_equation_residual(c(0.3, 15.0), &d).unwrap() < 1e-8);
    assert!(functional_equation_residual(c(0.5, 50.0), &d).unwrap() < 1e-8);
    assert!(functional_equation_residual(c(-0.5, 30.0), &d).unwrap() < 1e-7);
}

#[test]
fn theta_asymptotics() {
    // Classical expansion: θ(t) = (t/2) log(t/2πe) - π/8 + 1/(48t) + ...
    let main = |t: f64| 0.5 * t * (t / (2.0 * PI * std::f64::consts::E)).ln();
    for (t, tol) in [(100.0, 0.01), (1000.0, 0.001)] {
        let th = theta(t).unwrap();
        assert!((th - (main(t) - PI / 8.0)).abs() < tol, "t = {t}");
        // The constant -7/8 is off by (7 - π)/8 ≈ 0.482 at every height.
        let off = (th - (main(t) - 7.0 / 8.0)).abs();
        assert!((off - (7.0 - PI) / 8.0).abs() < tol);
    }
    let t = 2.0 * PI * std::f64::consts::E;
    assert!((theta(t).unwrap() + PI / 8.0).abs() < 1.0 / t);
}

#[test]
fn hardy_z_at_twenty() {
    let th = oracle_log_gamma(c(0.25, 10.0)).im - 10.0 * PI.ln();
    assert!((theta(20.0).unwrap() - th).abs() < 1e-10);
    let expected = (oracle_zeta(c(0.5, 20.0)) * Complex64::from_polar(1.0, th)).re;
    assert!((hardy_z(20.0).unwrap() - expected).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugate_symmetry(re in -0.9f64..6.0, im in 0.0f64..3000.0) {
        let s = c(re, im);
        prop_assume!((s - 1.0).norm() > 1e-3);
        let a = zeta(s).unwrap();
        let b = zeta(s.conj()).unwrap();
        prop_assert!((a - b.conj()).norm() < 1e-12);
    }

    #[test]
    fn critical_line_chi_unimodular(t in 2.0f64..1e4) {
        prop_assert!((chi(c(0.5, t)).unwrap().norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn hardy_modulus(t in 2.0f64..3000.0) {
        let z = hardy_z(t).unwrap();
        let m = zeta(c(0.5, t)).unwrap().norm();
        prop_assert!((z.abs() - m).abs() < 1e-9);
    }

    #[test]
    fn doubling_term_count_is_stable(re in -0.9f64..6.0, im in -1e4f64..1e4) {
        let s = c(re, im);
        prop_assume!((s - 1.0).norm() > 1e-3);
        let n = (2.0 * im.abs()).ceil().max(20.0) as usize;
        let a = zeta_with_terms(s, n).unwrap();
        let b = zeta_with_terms(s, 2 * n).unwrap();
        // Left of Re s = 0 the terms grow like n^{-σ} and rounding sets a
        // floor proportional to |ζ|.
        let bound = 1e-10f64.max(5e-14 * a.norm());
        prop_assert!((a - b).norm() < bound, "{}", (a - b).norm());
    }

    #[test]
    fn functional_equation_everywhere(re in -0.9f64..1.9, im in 2.0f64..2000.0) {
        let d = EvalDomain::default();
        let r = functional_equation_residual(c(re, im), &d).unwrap();
        prop_assert!(r < 1e-7, "residual {r:e}");
    }
}
