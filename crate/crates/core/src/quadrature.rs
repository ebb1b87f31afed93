//! Adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Global adaptive bisection in the style of QUADPACK's QAG: the
//! subinterval with the largest error estimate is split until the summed
//! estimate falls below the requested tolerance. Integrands that vanish
//! like a square root at an endpoint are regularised first by the
//! substitution `θ = lo + t²` (or `θ = hi − t²`).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Default subinterval cap, 2¹⁵.
pub const MAX_SUBINTERVALS: usize = 1 << 15;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate.
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Which endpoints carry `|θ − endpoint|^{1/2}` behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SqrtEndpoints {
    pub lower: bool,
    pub upper: bool,
}

impl SqrtEndpoints {
    pub const NONE: Self = Self {
        lower: false,
        upper: false,
    };
    pub const LOWER: Self = Self {
        lower: true,
        upper: false,
    };
    pub const UPPER: Self = Self {
        lower: false,
        upper: true,
    };
    pub const BOTH: Self = Self {
        lower: true,
        upper: true,
    };
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 15-point Kronrod evaluation with its embedded 7-point Gauss estimate.
fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut f1 = [0.0; 7];
    let mut f2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (a, b) = (f(center - dx), f(center + dx));
        f1[j] = a;
        f2[j] = b;
        kronrod += WGK[j] * (a + b);
        abs_sum += WGK[j] * (a.abs() + b.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (a + b);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((f1[j] - mean).abs() + (f2[j] - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment {
        lo,
        hi,
        value,
        error,
    }
}

/// Adaptive integration of `f` over `[lo, hi]`.
///
/// Converges when the summed error estimate is at most
/// `max(tol, tol·|value|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult> {
    integrate_capped(f, lo, hi, tol, MAX_SUBINTERVALS)
}

pub fn integrate_capped<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_subintervals: usize,
) -> Result<QuadratureResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "quadrature tolerance must be positive, got {tol}"
        )));
    }
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!(
            "bad integration interval [{lo}, {hi}]"
        )));
    }
    let first = kronrod15(&f, lo, hi);
    let mut evaluations = 15;
    if !first.value.is_finite() {
        return Err(Error::Domain(format!(
            "integrand is not finite on [{lo}, {hi}]"
        )));
    }
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    loop {
        let limit = tol.max(tol * value.abs());
        if error <= limit {
            break;
        }
        if heap.len() >= max_subintervals {
            return Err(Error::NoConvergence {
                estimate: value,
                error_estimate: error,
                subintervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // interval exhausted at machine resolution
            return Err(Error::NoConvergence {
                estimate: value,
                error_estimate: error,
                subintervals: heap.len() + 1,
            });
        }
        let left = kronrod15(&f, worst.lo, mid);
        let right = kronrod15(&f, mid, worst.hi);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if heap.len() % 64 == 0 {
            // resum to stop drift in the running totals
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
    let value: f64 = heap.iter().map(|s| s.value).sum();
    let error_estimate: f64 = heap.iter().map(|s| s.error).sum();
    Ok(QuadratureResult {
        value,
        error_estimate,
        evaluations,
    })
}

/// Integration for integrands with square-root endpoint behaviour.
///
/// A flagged endpoint is removed by `θ = lo + t²` (or `θ = hi − t²`),
/// which turns `√(θ − lo)` into a smooth `t`. With both ends flagged the
/// interval is split at its midpoint first.
pub fn integrate_sqrt_endpoints<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    ends: SqrtEndpoints,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(lo <= hi) {
        return Err(Error::Domain(format!(
            "bad integration interval [{lo}, {hi}]"
        )));
    }
    let from_lower = |a: f64, b: f64, tol: f64| {
        let w = (b - a).sqrt();
        integrate(|t: f64| 2.0 * t * f(a + t * t), 0.0, w, tol)
    };
    let from_upper = |a: f64, b: f64, tol: f64| {
        let w = (b - a).sqrt();
        integrate(|t: f64| 2.0 * t * f(b - t * t), 0.0, w, tol)
    };
    match (ends.lower, ends.upper) {
        (false, false) => integrate(&f, lo, hi, tol),
        (true, false) => from_lower(lo, hi, tol),
        (false, true) => from_upper(lo, hi, tol),
        (true, true) => {
            let mid = 0.5 * (lo + hi);
            let left = from_lower(lo, mid, 0.5 * tol)?;
            let right = from_upper(mid, hi, 0.5 * tol)?;
            Ok(QuadratureResult {
                value: left.value + right.value,
                error_estimate: left.error_estimate + right.error_estimate,
                evaluations: left.evaluations + right.evaluations,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    /// Wallis: ∫₀^{2π} cos^{2k} = 2π (2k−1)!!/(2k)!!
    fn wallis(k: u32) -> f64 {
        let mut r = 2.0 * PI;
        for j in 1..=k {
            r *= (2 * j - 1) as f64 / (2 * j) as f64;
        }
        r
    }

    #[test]
    fn sine_over_half_period() {
        let r = integrate(f64::sin, 0.0, PI, 1e-13).unwrap();
        assert_abs_diff_eq!(r.value, 2.0, epsilon = 1e-12);
        assert!(r.error_estimate >= 0.0 && r.evaluations > 0);
    }

    #[test]
    fn cos12_matches_wallis() {
        let r = integrate(|t: f64| t.cos().powi(12), 0.0, 2.0 * PI, 1e-12).unwrap();
        assert_abs_diff_eq!(wallis(6), 2.0 * PI * 10395.0 / 46080.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.value, wallis(6), epsilon = 1e-11);
        assert_abs_diff_eq!(r.value, 1.417_398, epsilon = 1e-6);
    }

    #[test]
    fn constant() {
        let r = integrate(|_| 1.0, 0.0, 1.0, 1e-9).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-15);
        assert_eq!(r.evaluations, 15);
    }

    #[test]
    fn degenerate_interval_is_zero() {
        let r = integrate(|x| x * x, 2.0, 2.0, 1e-9).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.evaluations > 0);
    }

    #[test]
    fn kronrod_exact_for_degree_22() {
        // a single 15-point pass integrates x^22 + x^21 exactly on [0, 1]
        let r = integrate_capped(|x: f64| x.powi(22) + x.powi(21), 0.0, 1.0, 1e-300, 1);
        let v = match r {
            Ok(r) => r.value,
            Err(Error::NoConvergence { estimate, .. }) => estimate,
            Err(e) => panic!("{e}"),
        };
        assert_abs_diff_eq!(v, 1.0 / 23.0 + 1.0 / 22.0, epsilon = 1e-15);
    }

    #[test]
    fn sqrt_endpoint_examples() {
        let r = integrate_sqrt_endpoints(
            |t: f64| (1.0 - t).sqrt(),
            0.0,
            1.0,
            SqrtEndpoints::UPPER,
            1e-12,
        )
        .unwrap();
        assert_abs_diff_eq!(r.value, 2.0 / 3.0, epsilon = 1e-10);

        let r = integrate_sqrt_endpoints(
            |t: f64| (t * (1.0 - t)).sqrt(),
            0.0,
            1.0,
            SqrtEndpoints::BOTH,
            1e-12,
        )
        .unwrap();
        assert_abs_diff_eq!(r.value, PI / 8.0, epsilon = 1e-10);

        let f = |t: f64| (3.0 * t).cos() * t.exp();
        let a = integrate(f, 0.2, 1.7, 1e-12).unwrap().value;
        let b = integrate_sqrt_endpoints(f, 0.2, 1.7, SqrtEndpoints::BOTH, 1e-12)
            .unwrap()
            .value;
        assert_abs_diff_eq!(a, b, epsilon = 1e-10);
    }

    #[test]
    fn sqrt_singularity_costs_less_with_substitution() {
        let f = |t: f64| (t * (1.0 - t)).sqrt();
        let plain = integrate(f, 0.0, 1.0, 1e-10).unwrap();
        let subst = integrate_sqrt_endpoints(f, 0.0, 1.0, SqrtEndpoints::BOTH, 1e-10).unwrap();
        assert!(subst.evaluations < plain.evaluations);
    }

    #[test]
    fn cap_reports_best_estimate() {
        let r = integrate_capped(|x: f64| (50.0 * x).sin().abs(), 0.0, 10.0, 1e-14, 4);
        match r {
            Err(Error::NoConvergence {
                estimate,
                subintervals,
                ..
            }) => {
                assert!(estimate.is_finite());
                assert!(subintervals >= 4);
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(integrate(|x| x, 1.0, 0.0, 1e-9).is_err());
        assert!(integrate(|x| x, 0.0, 1.0, 0.0).is_err());
    }
}
