//! Bessel functions `J_m`, `Y_m` of integer order, zeros `j_{m,k}`, and zeros
//! of the annulus cross product `J_m(x)Y_m(ρx) − J_m(ρx)Y_m(x)`.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest supported Bessel order.
pub const MAX_ORDER: u32 = 20_000;
/// Largest supported argument.
pub const MAX_ARGUMENT: f64 = 1e5;
/// Largest supported zero index `k`.
pub const MAX_ZERO_INDEX: u32 = 1000;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this order each zero's index is certified by counting sign changes.
const CERTIFY_ORDER: u32 = 200;
const SCAN_STEP: f64 = 0.5;

/// Negated zeros of the Airy function Ai, `|a_k|` for `k = 1..=10`.
const AIRY_ZEROS: [f64; 10] = [
    2.338_107_410_459_767_4,
    4.087_949_444_130_97,
    5.520_559_828_095_515,
    6.786_708_090_071_912,
    7.944_133_587_112_781,
    9.022_650_853_340_979,
    10.040_174_341_558_087,
    11.008_524_303_733_262,
    11.936_015_563_236_262,
    12.828_776_752_865_757,
];

/// The `k`th positive zero of `J_m`, with a sign-change bracket around it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesselZero {
    pub order: u32,
    pub index: u32,
    pub value: f64,
    pub bracket: (f64, f64),
}

fn check_order(m: u32) -> Result<()> {
    if m > MAX_ORDER {
        return Err(Error::OrderOverflow {
            order: m as usize,
            max: MAX_ORDER as usize,
        });
    }
    Ok(())
}

fn check_argument(x: f64) -> Result<()> {
    if !(0.0..=MAX_ARGUMENT).contains(&x) {
        return Err(Error::DomainError(format!(
            "Bessel argument must lie in [0, {MAX_ARGUMENT}], got {x}"
        )));
    }
    Ok(())
}

/// Ascending series `Σ (−1)^k (x/2)^{2k+m} / (k!(m+k)!)`.
fn j_series(m: u32, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut t = 1.0;
    for i in 1..=m {
        t *= h / i as f64;
    }
    let mut sum = t;
    let q = -h * h;
    for k in 1..500u32 {
        t *= q / (k as f64 * (m + k) as f64);
        sum += t;
        if t.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn use_series(m: u32, x: f64) -> bool {
    x <= 4.0 || x * x <= m as f64 + 1.0
}

/// Miller backward recurrence: `J_0(x), …, J_n(x)` for some `n ≥ upto`,
/// normalized with `1 = J_0 + 2ΣJ_{2k}`.
fn miller(x: f64, upto: u32) -> Vec<f64> {
    let mf = upto as f64;
    let mut n = (mf.max(x) + 30.0 + 15.0 * x.cbrt() + (40.0 * mf).sqrt()).ceil() as usize;
    n += n % 2;
    let mut vals = vec![0.0; n + 1];
    let (mut next, mut cur) = (0.0f64, 1.0f64);
    let mut sum = 0.0;
    for k in (1..=n).rev() {
        vals[k] = cur;
        if k % 2 == 0 {
            sum += 2.0 * cur;
        }
        let prev = (2.0 * k as f64 / x) * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > 1e200 {
            cur *= 1e-200;
            next *= 1e-200;
            sum *= 1e-200;
            vals[k..].iter_mut().for_each(|v| *v *= 1e-200);
        }
    }
    vals[0] = cur;
    sum += cur;
    vals.iter_mut().for_each(|v| *v /= sum);
    vals
}

/// `(J_{m−1}, J_m, J_{m+1})`, with `J_{−1} = −J_1`.
fn j_triple(m: u32, x: f64) -> (f64, f64, f64) {
    if x == 0.0 {
        let at = |n: i64| if n == 0 { 1.0 } else { 0.0 };
        return (at(m as i64 - 1), at(m as i64), at(m as i64 + 1));
    }
    if use_series(m + 1, x) {
        let below = if m == 0 { -j_series(1, x) } else { j_series(m - 1, x) };
        return (below, j_series(m, x), j_series(m + 1, x));
    }
    let t = miller(x, m + 1);
    let m = m as usize;
    let below = if m == 0 { -t[1] } else { t[m - 1] };
    (below, t[m], t[m + 1])
}

/// Bessel function of the first kind `J_m(x)`, `x ≥ 0`.
pub fn bessel_j(m: u32, x: f64) -> Result<f64> {
    check_order(m)?;
    check_argument(x)?;
    if x == 0.0 {
        return Ok(if m == 0 { 1.0 } else { 0.0 });
    }
    if use_series(m, x) {
        return Ok(j_series(m, x));
    }
    Ok(miller(x, m)[m as usize])
}

/// `J_m′(x) = (J_{m−1}(x) − J_{m+1}(x)) / 2`.
pub fn bessel_j_prime(m: u32, x: f64) -> Result<f64> {
    check_order(m)?;
    check_argument(x)?;
    let (a, _, b) = j_triple(m, x);
    Ok(0.5 * (a - b))
}

/// `Y_0` and `Y_1` from their Neumann series in `J_n`.
fn y01(x: f64) -> (f64, f64) {
    let j = miller(x, 2);
    let log = (0.5 * x).ln() + EULER_GAMMA;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut k = 1usize;
    while 2 * k + 1 < j.len() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let kf = k as f64;
        s0 += sign * j[2 * k] / kf;
        s1 += sign * (2.0 * kf + 1.0) * j[2 * k + 1] / (kf * (kf + 1.0));
        k += 1;
    }
    let y0 = (2.0 / PI) * (log * j[0] - 2.0 * s0);
    let y1 = (2.0 / PI) * (-j[0] / x + (log - 1.0) * j[1] - s1);
    (y0, y1)
}

/// Bessel function of the second kind `Y_m(x)`, `x > 0`. Orders above one
/// come from upward recurrence, which may overflow to `−∞` for tiny `x`.
pub fn bessel_y(m: u32, x: f64) -> Result<f64> {
    check_order(m)?;
    if !(x > 0.0) {
        return Err(Error::DomainError(format!(
            "Y_m(x) needs x > 0, got {x}"
        )));
    }
    check_argument(x)?;
    Ok(y_unchecked(m, x))
}

fn y_unchecked(m: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = y01(x);
    if m == 0 {
        return prev;
    }
    for n in 1..m {
        let next = (2.0 * n as f64 / x) * cur - prev;
        prev = cur;
        cur = next;
        if cur.is_infinite() {
            break;
        }
    }
    cur
}

fn airy_zero(k: u32) -> f64 {
    if let Some(a) = AIRY_ZEROS.get(k as usize - 1) {
        return *a;
    }
    let t = 3.0 * PI * (4.0 * k as f64 - 1.0) / 8.0;
    let t2 = t.powi(-2);
    t.powf(2.0 / 3.0) * (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * 77125.0 / 82944.0)))
}

/// McMahon's large-zero expansion.
fn mcmahon(m: u32, k: u32) -> f64 {
    let mu = 4.0 * (m as f64).powi(2);
    let beta = (k as f64 + 0.5 * m as f64 - 0.25) * PI;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8.powi(5))
}

/// Leading term of the uniform (Airy-type) expansion: `m·z(ζ)` with
/// `ζ = −m^{−2/3}|a_k|` and `√(z²−1) − arcsec z = ⅔(−ζ)^{3/2}`.
fn uniform_guess(m: u32, k: u32) -> f64 {
    let mf = m as f64;
    let s = (2.0 / 3.0) * airy_zero(k).powf(1.5) / mf;
    let g = |z: f64| (z * z - 1.0).sqrt() - (1.0 / z).acos();
    let mut z = (s + FRAC_PI_2).max(1.0 + (3.0 * s / 8f64.sqrt()).powf(2.0 / 3.0));
    for _ in 0..60 {
        let step = (g(z) - s) * z / (z * z - 1.0).sqrt();
        z -= step;
        if step.abs() <= 1e-15 * z {
            break;
        }
    }
    mf * z
}

fn zero_guess(m: u32, k: u32) -> f64 {
    if m <= 2 {
        mcmahon(m, k)
    } else {
        uniform_guess(m, k)
    }
}

/// Bounds `m + |a_k|(m/2)^{1/3} < j_{m,k} < m + |a_k|(m/2)^{1/3} + (3/20)|a_k|²(m/2)^{−1/3}`.
fn airy_bounds(m: u32, k: u32) -> (f64, f64) {
    let c = (0.5 * m as f64).cbrt();
    let a = airy_zero(k);
    let lower = m as f64 + a * c;
    let upper = lower + 0.15 * a * a / c;
    (lower * (1.0 - 1e-12), upper * (1.0 + 1e-12))
}

/// Proven enclosure `(lower, upper)` of `j_{m,k}`; unbounded above for `m = 0`.
pub fn zero_bounds(m: u32, k: u32) -> (f64, f64) {
    if m == 0 {
        return (0.0, f64::INFINITY);
    }
    airy_bounds(m, k.max(1))
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Sign change of `J_m` in `[lo, hi]` nearest to `guess`, found on 16 subintervals.
fn bracket_near(m: u32, guess: f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    let lo = lo.max(0.0);
    let n = 16;
    let xs: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let vals: Vec<f64> = xs.iter().map(|&x| j_triple(m, x).1).collect();
    (0..n)
        .filter(|&i| sign(vals[i]) * sign(vals[i + 1]) < 0 || (vals[i + 1] == 0.0 && i + 1 < n))
        .map(|i| (xs[i], xs[i + 1]))
        .min_by(|a, b| {
            let da = (0.5 * (a.0 + a.1) - guess).abs();
            let db = (0.5 * (b.0 + b.1) - guess).abs();
            da.total_cmp(&db)
        })
}

/// Bisection down to width 0.05, then safeguarded Newton. Returns the zero and
/// a final bracket `(a, b)` with `J(a)`, `J(b)` of opposite sign (or zero).
fn refine_zero(m: u32, mut a: f64, mut b: f64, guess: f64) -> (f64, (f64, f64)) {
    let sa = sign(j_triple(m, a).1);
    if sa == 0 {
        return (a, (a, a));
    }
    while b - a > 0.05 {
        let mid = 0.5 * (a + b);
        match sign(j_triple(m, mid).1) {
            0 => return (mid, (mid, mid)),
            s if s == sa => a = mid,
            _ => b = mid,
        }
    }
    let mut x = if guess > a && guess < b { guess } else { 0.5 * (a + b) };
    for _ in 0..50 {
        let (jm1, j, jp1) = j_triple(m, x);
        match sign(j) {
            0 => return (x, (x, x)),
            s if s == sa => a = x,
            _ => b = x,
        }
        let d = 0.5 * (jm1 - jp1);
        let mut next = x - j / d;
        if !(next > a && next < b) {
            next = 0.5 * (a + b);
        }
        let done = (next - x).abs() <= 2.0 * f64::EPSILON * x || b - a <= 4.0 * f64::EPSILON * b;
        x = next;
        if done {
            break;
        }
    }
    (x, (a, b))
}

/// Zeros of `J_m` in `(start, end)` counted by sign changes on a fine sample.
fn count_zeros_before(m: u32, end: f64) -> u32 {
    let start = m as f64;
    let mut last = sign(j_triple(m, start).1);
    let mut count = 0;
    let mut x = start;
    loop {
        x = (x + SCAN_STEP).min(end);
        let s = sign(j_triple(m, x).1);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        if x >= end {
            return count;
        }
    }
}

/// Locates the `k`th zero by a plain scan from `x = m`.
fn scan_for_zero(m: u32, k: u32) -> Result<(f64, f64)> {
    let start = m as f64;
    let limit = start + (k as f64 + 10.0) * PI + 10.0 * (start + 1.0).cbrt();
    let mut last = sign(j_triple(m, start).1);
    let mut seen = 0;
    let mut x = start;
    while x < limit {
        let next = x + SCAN_STEP;
        let s = sign(j_triple(m, next).1);
        if s != 0 {
            if last != 0 && s != last {
                seen += 1;
                if seen == k {
                    return Ok((x, next));
                }
            }
            last = s;
        }
        x = next;
    }
    Err(Error::BracketFailure(format!(
        "scan found only {seen} zeros of J_{m} below {limit:.3}"
    )))
}

fn zero_cache() -> &'static RwLock<HashMap<(u32, u32), BesselZero>> {
    static CACHE: OnceLock<RwLock<HashMap<(u32, u32), BesselZero>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `k`th positive zero `j_{m,k}` of `J_m` (`k` is 1-based).
pub fn bessel_j_zero(m: u32, k: u32) -> Result<BesselZero> {
    check_order(m)?;
    if k == 0 || k > MAX_ZERO_INDEX {
        return Err(Error::InvalidArgument(format!(
            "zero index must lie in 1..={MAX_ZERO_INDEX}, got {k}"
        )));
    }
    if let Some(z) = zero_cache().read().expect("zero cache poisoned").get(&(m, k)) {
        return Ok(*z);
    }
    let zero = compute_zero(m, k)?;
    zero_cache()
        .write()
        .expect("zero cache poisoned")
        .insert((m, k), zero);
    Ok(zero)
}

fn compute_zero(m: u32, k: u32) -> Result<BesselZero> {
    let guess = zero_guess(m, k);
    let make = |(value, bracket): (f64, (f64, f64))| BesselZero {
        order: m,
        index: k,
        value,
        bracket,
    };

    if m > CERTIFY_ORDER {
        let (lo, hi) = airy_bounds(m, k);
        let isolated = airy_bounds(m, k + 1).0 > hi && (k == 1 || airy_bounds(m, k - 1).1 < lo);
        if isolated {
            if sign(j_triple(m, lo).1) * sign(j_triple(m, hi).1) < 0 {
                return Ok(make(refine_zero(m, lo, hi, guess)));
            }
            return Err(Error::BracketFailure(format!(
                "no sign change of J_{m} between the bounds {lo} and {hi} for zero {k}"
            )));
        }
    }

    let bracket = bracket_near(m, guess, guess - FRAC_PI_2, guess + FRAC_PI_2)
        .or_else(|| bracket_near(m, guess, guess - PI, guess + PI));
    if let Some((a, b)) = bracket {
        let (value, fine) = refine_zero(m, a, b, guess);
        if count_zeros_before(m, fine.0) == k - 1 {
            return Ok(make((value, fine)));
        }
    } else if m > CERTIFY_ORDER {
        return Err(Error::BracketFailure(format!(
            "no sign change of J_{m} within pi of {guess:.6} for zero {k}"
        )));
    }
    let (a, b) = scan_for_zero(m, k)?;
    Ok(make(refine_zero(m, a, b, 0.5 * (a + b))))
}

/// `F(x) = J_m(x)Y_m(ρx) − J_m(ρx)Y_m(x)`.
pub fn cross_product(m: u32, ratio: f64, x: f64) -> Result<f64> {
    check_order(m)?;
    if !(x > 0.0) {
        return Err(Error::DomainError(format!("cross product needs x > 0, got {x}")));
    }
    check_argument(ratio * x)?;
    Ok(cross_unchecked(m, ratio, x))
}

fn cross_unchecked(m: u32, ratio: f64, x: f64) -> f64 {
    let rx = ratio * x;
    let a = j_triple(m, x).1 * y_unchecked(m, rx);
    let b = j_triple(m, rx).1 * y_unchecked(m, x);
    let v = a - b;
    if v.is_nan() {
        // 0·∞ products: fall back to the term that is finite
        if a.is_nan() {
            -b
        } else {
            a
        }
    } else {
        v
    }
}

fn bisect_cross(m: u32, ratio: f64, mut a: f64, mut b: f64) -> f64 {
    let sa = sign(cross_unchecked(m, ratio, a));
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        match sign(cross_unchecked(m, ratio, mid)) {
            0 => return mid,
            s if s == sa => a = mid,
            _ => b = mid,
        }
    }
    let (fa, fb) = (cross_unchecked(m, ratio, a), cross_unchecked(m, ratio, b));
    if fa.abs() <= fb.abs() {
        a
    } else {
        b
    }
}

/// The `k`th positive zero of the annulus cross product for radius ratio `ρ ∈ (1, 100]`.
pub fn cross_product_zero(m: u32, k: u32, ratio: f64) -> Result<f64> {
    check_order(m)?;
    if !(ratio > 1.0 && ratio <= 100.0) {
        return Err(Error::InvalidArgument(format!(
            "radius ratio must lie in (1, 100], got {ratio}"
        )));
    }
    if k == 0 || k > MAX_ZERO_INDEX {
        return Err(Error::InvalidArgument(format!(
            "zero index must lie in 1..={MAX_ZERO_INDEX}, got {k}"
        )));
    }
    // the annulus lies inside the disk of the outer radius, so x > j_{m,1}/ρ
    let start = bessel_j_zero(m, 1)?.value / ratio;
    let step = FRAC_PI_2 / (ratio - 1.0);
    let limit = start + 2.0 * (k as f64 + 10.0) * PI / (ratio - 1.0) + 2.0 * step;
    check_argument(ratio * limit)?;
    let mut x = start;
    let mut last = sign(cross_unchecked(m, ratio, x));
    let mut seen = 0;
    while x < limit {
        let next = x + step;
        let s = sign(cross_unchecked(m, ratio, next));
        if s != 0 && last != 0 && s != last {
            seen += 1;
            if seen == k {
                return Ok(bisect_cross(m, ratio, x, next));
            }
        }
        if s != 0 {
            last = s;
        }
        x = next;
    }
    Err(Error::BracketFailure(format!(
        "found {seen} cross-product zeros (m = {m}, ratio = {ratio}) below {limit:.3}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `J_m(x) = (1/2π)∫cos(mτ − x sin τ)dτ` by the trapezoidal rule, which is
    /// exponentially accurate for this periodic integrand.
    fn j_trapezoid(m: u32, x: f64) -> f64 {
        let n = (2.0 * (x + m as f64)) as usize + 64;
        let h = 2.0 * PI / n as f64;
        (0..n)
            .map(|i| {
                let t = i as f64 * h;
                (m as f64 * t - x * t.sin()).cos()
            })
            .sum::<f64>()
            / n as f64
    }

    fn harmonic(k: u32) -> f64 {
        (1..=k).map(|i| 1.0 / i as f64).sum()
    }

    /// Ascending logarithmic series for `Y_0` and `Y_1`.
    fn y_series(m: u32, x: f64) -> f64 {
        let h = 0.5 * x;
        let mut sum = 0.0;
        let mut t = if m == 0 { 1.0 } else { h };
        for k in 0..80u32 {
            if k > 0 {
                t *= -h * h / (k as f64 * (k + m) as f64);
            }
            let c = if m == 0 {
                harmonic(k)
            } else {
                harmonic(k) + harmonic(k + 1) - 2.0 * EULER_GAMMA
            };
            sum += c * t;
        }
        let j = j_trapezoid(m, x);
        if m == 0 {
            (2.0 / PI) * (((h).ln() + EULER_GAMMA) * j - sum)
        } else {
            -2.0 / (PI * x) + (2.0 / PI) * h.ln() * j - sum / PI
        }
    }

    fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        let fa = f(a);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if (f(mid) > 0.0) == (fa > 0.0) {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn trivial_values() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert!(bessel_j(0, 2.404826).unwrap().abs() < 1e-6);
        assert!(bessel_y(0, 1e-8).unwrap() < -10.0);
        assert!(matches!(bessel_y(0, 0.0), Err(Error::DomainError(_))));
        assert!(matches!(bessel_j(MAX_ORDER + 1, 1.0), Err(Error::OrderOverflow { .. })));
    }

    #[test]
    fn j_matches_quadrature_small_arguments() {
        for m in 0..=30 {
            for i in 0..=140 {
                let x = 50.0 * i as f64 / 140.0;
                let err = (bessel_j(m, x).unwrap() - j_trapezoid(m, x)).abs();
                assert!(err < 1e-12, "J_{m}({x}) off by {err:e}");
            }
        }
    }

    #[test]
    fn j_matches_quadrature_large_arguments() {
        for &m in &[0u32, 3, 40, 150, 200] {
            for &x in &[60.0, 137.5, 512.25, 2000.0, 9999.0] {
                let oracle = j_trapezoid(m, x);
                let envelope = (2.0 / (PI * x)).sqrt();
                if oracle.abs() < 1e-2 * envelope {
                    continue;
                }
                let rel = (bessel_j(m, x).unwrap() - oracle).abs() / oracle.abs();
                assert!(rel < 1e-10, "J_{m}({x}) relative error {rel:e}");
            }
        }
    }

    #[test]
    fn j_large_order_near_turning_point() {
        for &(m, x) in &[(10_000u32, 10_010.0), (10_000, 10_025.0), (5000, 5030.0), (2500, 2400.0)] {
            let oracle = j_trapezoid(m, x);
            let err = (bessel_j(m, x).unwrap() - oracle).abs();
            assert!(err < 1e-10 * oracle.abs().max(1e-3), "J_{m}({x}): {err:e}");
        }
    }

    #[test]
    fn y_matches_log_series() {
        for m in 0..=1 {
            for i in 1..=64 {
                let x = 8.0 * i as f64 / 64.0;
                let err = (bessel_y(m, x).unwrap() - y_series(m, x)).abs();
                assert!(err < 1e-11 * (1.0 + y_series(m, x).abs()), "Y_{m}({x}): {err:e}");
            }
        }
    }

    #[test]
    fn y0_first_zero() {
        assert!(bessel_y(0, 0.893577).unwrap().abs() < 1e-6);
        let z = bisect(|x| y_series(0, x), 0.5, 1.5);
        assert!((z - 0.893577).abs() < 1e-6);
    }

    #[test]
    fn wronskian_and_recurrence_grid() {
        for m in 0..=20u32 {
            for i in 0..=100 {
                let x = 0.1 + (50.0 - 0.1) * i as f64 / 100.0;
                let j = |n: u32| bessel_j(n, x).unwrap();
                let y = |n: u32| bessel_y(n, x).unwrap();
                let w = j(m + 1) * y(m) - j(m) * y(m + 1);
                assert!((w * PI * x / 2.0 - 1.0).abs() < 1e-9, "Wronskian m={m} x={x}");
                if m >= 1 {
                    let r = j(m - 1) + j(m + 1) - 2.0 * m as f64 / x * j(m);
                    assert!(r.abs() < 1e-9, "recurrence m={m} x={x}: {r:e}");
                }
            }
        }
        let w = bessel_j(1, 2.0).unwrap() * bessel_y(0, 2.0).unwrap()
            - bessel_j(0, 2.0).unwrap() * bessel_y(1, 2.0).unwrap();
        assert!((w - 1.0 / PI).abs() < 1e-10);
    }

    #[test]
    fn zero_examples_match_series_bisection() {
        let j01 = bisect(|x| j_series(0, x), 2.0, 3.0);
        let j11 = bisect(|x| j_series(1, x), 3.5, 4.0);
        let j02 = bisect(|x| j_series(0, x), 5.0, 6.0);
        for (m, k, oracle, quoted) in [(0, 1, j01, 2.404826), (1, 1, j11, 3.831706), (0, 2, j02, 5.520078)] {
            let z = bessel_j_zero(m, k).unwrap();
            assert!((z.value - oracle).abs() < 1e-12, "j_{m},{k}");
            assert!((z.value - quoted).abs() < 1e-6);
            assert!(z.bracket.0 <= z.value && z.value <= z.bracket.1);
        }
        assert!(bessel_j_zero(0, 2).unwrap().value > bessel_j_zero(0, 1).unwrap().value);
    }

    #[test]
    fn zeros_vanish_and_exceed_order() {
        for m in 0..=50 {
            let z = bessel_j_zero(m, 1).unwrap();
            assert!(z.value > m as f64);
            assert!(bessel_j(m, z.value).unwrap().abs() < 1e-12);
        }
        for &m in &[0u32, 7, 100, 200] {
            for &k in &[1u32, 5, 17, 60, 100] {
                let z = bessel_j_zero(m, k).unwrap();
                assert!(bessel_j(m, z.value).unwrap().abs() < 1e-12, "J_{m} at zero {k}");
            }
        }
    }

    #[test]
    fn zeros_match_independent_scan() {
        for &m in &[0u32, 1, 4, 13, 40, 90, 200] {
            let zeros: Vec<f64> = (1..=40).map(|k| bessel_j_zero(m, k).unwrap().value).collect();
            let mut x = if m == 0 { 0.1 } else { m as f64 * 0.9 };
            let mut prev = j_trapezoid(m, x);
            let mut found = Vec::new();
            while found.len() < zeros.len() {
                let next = x + 0.25;
                let v = j_trapezoid(m, next);
                if (v > 0.0) != (prev > 0.0) {
                    found.push(bisect(|t| j_trapezoid(m, t), x, next));
                }
                prev = v;
                x = next;
            }
            for (k, (a, b)) in zeros.iter().zip(&found).enumerate() {
                assert!((a - b).abs() < 1e-10, "j_{m},{} = {a} vs scan {b}", k + 1);
            }
        }
    }

    #[test]
    fn interlacing() {
        for m in 0..=10 {
            for k in 1..=10 {
                let a = bessel_j_zero(m, k).unwrap().value;
                let b = bessel_j_zero(m + 1, k).unwrap().value;
                let c = bessel_j_zero(m, k + 1).unwrap().value;
                assert!(a < b && b < c, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn large_order_zeros_match_asymptotics() {
        for &m in &[500u32, 2000, 10_000, 20_000] {
            let v = m as f64;
            let asym = v + 1.8557571 * v.cbrt() + 1.033150 / v.cbrt() - 0.00397 / v
                - 0.0908 * v.powf(-5.0 / 3.0)
                + 0.043 * v.powf(-7.0 / 3.0);
            let z = bessel_j_zero(m, 1).unwrap();
            assert!((z.value - asym).abs() < 1e-6, "m={m}: {} vs {asym}", z.value);
            let (lo, hi) = airy_bounds(m, 1);
            assert!(lo < z.value && z.value < hi);
        }
    }

    #[test]
    fn airy_bounds_enclose_certified_zeros() {
        for m in (5..=200).step_by(15) {
            for k in 1..=4 {
                let z = bessel_j_zero(m, k).unwrap().value;
                let (lo, hi) = airy_bounds(m, k);
                assert!(lo < z && z < hi, "m={m} k={k}: {lo} < {z} < {hi}");
            }
        }
    }

    fn cross_oracle(m: u32, rho: f64, x: f64) -> f64 {
        j_trapezoid(m, x) * y_series(m, rho * x) - j_trapezoid(m, rho * x) * y_series(m, x)
    }

    #[test]
    fn cross_product_examples() {
        let z = cross_product_zero(0, 1, 2.0).unwrap();
        let oracle = bisect(|x| cross_oracle(0, 2.0, x), 2.5, 3.5);
        assert!((z - oracle).abs() < 1e-9, "{z} vs {oracle}");
        assert!((z - 3.123).abs() < 1e-3);

        // wide annulus: compare with the oracle; the width-dominated value
        // x·(ρ−1) ≈ π is only approached as ρ → 1
        let wide = cross_product_zero(0, 1, 20.0).unwrap();
        let wide_oracle = bisect(|x| cross_oracle(0, 20.0, x), 0.13, 0.17);
        assert!((wide - wide_oracle).abs() < 1e-10, "{wide} vs {wide_oracle}");
        assert!((wide * 19.0 / PI - 0.92666).abs() < 1e-4);
        for rho in [1.05, 1.2, 1.5, 2.0, 5.0] {
            let x = cross_product_zero(0, 1, rho).unwrap();
            assert!((x * (rho - 1.0) / PI - 1.0).abs() < 0.05, "rho = {rho}");
        }

        for m in 0..=6 {
            let mut last = 0.0;
            for k in 1..=4 {
                let x = cross_product_zero(m, k, 2.0).unwrap();
                assert!(x > last);
                last = x;
                assert!(cross_product(m, 2.0, x).unwrap().abs() < 1e-10);
            }
        }
    }
}
