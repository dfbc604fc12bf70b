//! Extended-precision phases `t · log n mod 2π`.
//!
//! At heights near 10^4 the product `t · log n` is of order 10^5, where a plain
//! double carries an absolute error of about 1e-11. Summed over 2·10^4 terms
//! that exceeds the ζ error budget, so `log n` is kept as a double-double and
//! the reduction modulo 2π is done before rounding to a single double.

const TWO_PI_HI: f64 = std::f64::consts::TAU;
const TWO_PI_LO: f64 = 2.4492935982947064e-16;
const LN2_HI: f64 = std::f64::consts::LN_2;
const LN2_LO: f64 = 2.3190468138462996e-17;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[inline]
fn dd_add(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let (s, e) = two_sum(a.0, b.0);
    two_sum(s, e + a.1 + b.1)
}

#[inline]
fn dd_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let (p, e) = two_prod(a.0, b.0);
    two_sum(p, e + a.0 * b.1 + a.1 * b.0)
}

#[inline]
fn dd_div(a: (f64, f64), d: f64) -> (f64, f64) {
    let q = a.0 / d;
    let r = (-q).mul_add(d, a.0) + a.1;
    two_sum(q, r / d)
}

/// `log n` as an unevaluated pair `hi + lo`.
///
/// Writes `n = 2^k · r` with `r ∈ [2/3, 4/3]` and expands
/// `log r = 2 atanh(x)`, `x = (n - 2^k) / (n + 2^k)`, `|x| ≤ 1/5`. The terms
/// `x`, `x³/3` and `x⁵/5` are carried in double-double and the rest, below
/// 2e-6 in size, in plain double; the absolute error is near 1e-22.
pub(crate) fn ln_dd(n: u64) -> (f64, f64) {
    debug_assert!((1..1 << 52).contains(&n));
    let k = 63 - (n + n / 2).leading_zeros() as i32;
    let a = (1u64 << k) as f64;
    let nf = n as f64;
    let x = dd_div((nf - a, 0.0), nf + a);
    let x2 = dd_mul(x, x);
    let x3 = dd_mul(x2, x);
    let x5 = dd_mul(x3, x2);

    let q2 = x2.0;
    let mut rest = 0.0;
    for j in (3..=14).rev() {
        rest = rest * q2 + 1.0 / (2 * j + 1) as f64;
    }
    rest *= x5.0 * q2;

    let series = dd_add(dd_add(x, dd_div(x3, 3.0)), dd_add(dd_div(x5, 5.0), (rest, 0.0)));
    let kf = k as f64;
    let ln2k = dd_add(two_prod(kf, LN2_HI), (kf * LN2_LO, 0.0));
    dd_add(ln2k, (2.0 * series.0, 2.0 * series.1))
}

/// `(sin, cos)` of `t · (ln_hi + ln_lo)`.
#[inline]
pub(crate) fn sin_cos_phase(t: f64, ln_hi: f64, ln_lo: f64) -> (f64, f64) {
    let p = t * ln_hi;
    let p_lo = t.mul_add(ln_hi, -p) + t * ln_lo;
    let k = (p / TWO_PI_HI).round();
    // Exact: both terms are multiples of ulp(2π) and the difference is below 4.
    let r = (-k).mul_add(TWO_PI_HI, p);
    let r = r - k * TWO_PI_LO + p_lo;
    r.sin_cos()
}
