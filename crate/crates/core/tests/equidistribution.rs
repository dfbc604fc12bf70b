use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;
use zeta_discrete::beatty::BeattyPair;
use zeta_discrete::equidistribution::{
    joint_beatty_weyl, star_discrepancy, triple_integral_quadrature, triple_integral_reference, weyl_sum,
    EquidistError, FrequencyVector, SequenceHypothesis,
};

/// |Σ_{n≤N} e(nβ)| / N = |sin(πNβ)| / (N |sin(πβ)|).
fn geometric_oracle(beta: f64, n: u64) -> f64 {
    ((PI * n as f64 * beta).sin() / (PI * beta).sin()).abs() / n as f64
}

fn golden_floor(m: u64) -> u64 {
    let m = m as u128;
    ((m + (5 * m * m).isqrt()) / 2) as u64
}

#[test]
fn sqrt2_sum_decays() {
    let alpha = 2f64.sqrt();
    let r = weyl_sum(|n| alpha * n as f64, 1.0, 1_000_000, Some(&SequenceHypothesis::default())).unwrap();
    assert!(r.sum_magnitude < 1e-3, "{}", r.sum_magnitude);
    assert!(r.stays_below(1e-2, 1 << 10));
    assert_eq!(r.trajectory.last().unwrap().n, 1_000_000);
}

#[test]
fn rational_slope_resonates() {
    // x_n = 3n/2 at frequency 2 gives e(3n) = 1 for every n.
    let r = weyl_sum(|n| 1.5 * n as f64, 2.0, 10_000, None).unwrap();
    assert!((r.sum_magnitude - 1.0).abs() < 1e-9);
    // At frequency 1 the terms alternate, so |S_N| ≤ 1.
    let r = weyl_sum(|n| 1.5 * n as f64, 1.0, 10_000, None).unwrap();
    assert!(r.sum_magnitude <= 1.0 / 10_000.0 + 1e-12);
}

#[test]
fn hypotheses_are_enforced() {
    let h = SequenceHypothesis::default();
    let bad = |seq: &(dyn Fn(u64) -> f64 + Sync)| weyl_sum(seq, 1.0, 100, Some(&h));
    assert!(matches!(bad(&|n| -(n as f64)), Err(EquidistError::HypothesisViolation { n: 1, .. })));
    assert!(matches!(bad(&|_| 1.0), Err(EquidistError::HypothesisViolation { n: 2, .. })));
    assert!(matches!(
        bad(&|n| (n * n) as f64 * 100.0),
        Err(EquidistError::HypothesisViolation { .. })
    ));
    // Gaps of log n drop below 1e-2 just past n = 100.
    assert!(weyl_sum(|n| (n as f64).ln(), 1.0, 1000, Some(&h)).is_err());
    assert!(weyl_sum(|n| n as f64, 0.0, 10, None).is_err());
}

#[test]
fn joint_sum_matches_direct_evaluation() {
    let freq = FrequencyVector::new(vec![(2, 1)], vec![(3, -1)], 1.0, 0.5).unwrap();
    let (t1, t2) = (0.3, 1.7);
    let n = 20_000;
    let r = joint_beatty_weyl(&BeattyPair::golden(), t1, t2, &freq, n).unwrap();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        let a = golden_floor(k) as f64;
        let b = (golden_floor(k) + k) as f64;
        let phase = (t1 / freq.delta1 + a) * freq.theta1 + (t2 / freq.delta2 + b) * freq.theta2;
        acc += Complex64::from_polar(1.0, TAU * phase);
    }
    let direct = acc.norm() / n as f64;
    assert!((r.sum_magnitude - direct).abs() < 1e-9, "{} vs {direct}", r.sum_magnitude);
}

#[test]
fn frequency_vector_validation() {
    assert!(FrequencyVector::new(vec![(4, 1)], vec![], 1.0, 1.0).is_err());
    assert!(FrequencyVector::new(vec![(2, 1), (2, 1)], vec![], 1.0, 1.0).is_err());
    assert!(FrequencyVector::new(vec![(2, 0)], vec![(3, 0)], 1.0, 1.0).is_err());
    assert!(FrequencyVector::new(vec![(2, 1)], vec![], 0.0, 1.0).is_err());
    let f = FrequencyVector::new(vec![(2, 1), (3, 1)], vec![], 2.0, 1.0).unwrap();
    assert!((f.theta1 - 2.0 * 6f64.ln() / TAU).abs() < 1e-15);
    assert_eq!(f.theta2, 0.0);
}

#[test]
fn triple_integral() {
    assert_eq!(triple_integral_reference(), Complex64::new(0.0, 0.0));
    assert!(triple_integral_quadrature(1.0, 0.3, 0.7, 4096).norm() < 1e-12);
    // With the first frequency at 0 the result is ∏ (1 - e(-θ)) / (2πiθ).
    let one = |th: f64| (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -TAU * th)) / Complex64::new(0.0, TAU * th);
    let want = one(0.3) * one(0.7);
    let got = triple_integral_quadrature(0.0, 0.3, 0.7, 4096);
    assert!((got - want).norm() < 1e-6, "{got} vs {want}");
}

#[test]
fn sqrt2_discrepancy_stays_within_log_rate() {
    // Bounded partial quotients give D*_N = O(log N / N); 1.0 is the constant
    // observed for √2 on these N.
    let alpha = 2f64.sqrt();
    for n in [100usize, 1_000, 10_000, 100_000] {
        let pts: Vec<f64> = (1..=n).map(|k| k as f64 * alpha).collect();
        let d = star_discrepancy(&pts).unwrap();
        assert!(d * n as f64 / (n as f64).ln() < 1.0, "N = {n}: D* = {d}");
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| weyl_sum(|n| n as f64 * 3f64.sqrt(), 1.0, 200_000, None).unwrap())
    };
    assert_eq!(run(1), run(3));
}

proptest! {
    #[test]
    fn linear_sum_matches_geometric_series(beta in 0.01f64..0.99, n in 1u64..50_000) {
        let r = weyl_sum(|k| beta * k as f64, 1.0, n, None).unwrap();
        let want = geometric_oracle(beta, n);
        prop_assert!((r.sum_magnitude - want).abs() < 1e-9 * (1.0 + want), "{} vs {}", r.sum_magnitude, want);
        // Ceiling 1 / (N |sin πβ|).
        prop_assert!(r.sum_magnitude <= 1.0 / (n as f64 * (PI * beta).sin()) + 1e-9);
    }

    #[test]
    fn trajectory_is_monotone_in_n(n in 1u64..100_000) {
        let r = weyl_sum(|k| k as f64 * 2f64.sqrt(), 1.0, n, None).unwrap();
        prop_assert!(r.trajectory.windows(2).all(|w| w[0].n < w[1].n));
        prop_assert_eq!(r.trajectory.last().unwrap().n, n);
    }

    #[test]
    fn discrepancy_matches_brute_force(pts in prop::collection::vec(-10.0f64..10.0, 1..200)) {
        let mut xs: Vec<f64> = pts.iter().map(|x| x - x.floor()).collect();
        xs.sort_by(f64::total_cmp);
        let n = xs.len() as f64;
        let brute = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| ((i as f64 + 1.0) / n - x).max(x - i as f64 / n))
            .fold(0.0, f64::max);
        let d = star_discrepancy(&pts).unwrap();
        prop_assert!((d - brute).abs() < 1e-12, "{} vs {}", d, brute);
        prop_assert!(d >= 1.0 / (2.0 * n) - 1e-15 && d <= 1.0 + 1e-15);
    }
}
