//! Adaptive Gauss–Kronrod (10/21-point) quadrature on a power-of-two lattice.
//!
//! Callers seed the integration with panels whose endpoints are multiples of a
//! power of two (see [`dyadic_cover`]); bisection keeps every later endpoint on
//! the same lattice. Two integrals over overlapping ranges therefore evaluate
//! the integrand at bit-identical abscissae wherever their panel trees agree,
//! which is what makes memoizing an expensive integrand pay off.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_22,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_725,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_96,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_84,
    0.134_709_217_311_473_34,
    0.142_775_938_577_060_09,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];

// 10-point Gauss weights for the odd-indexed Kronrod abscissae.
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// Stopping rule: converged when error ≤ max(abs, rel·|value|).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-12, rel: 1e-8 }
    }
}

impl Tolerance {
    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate (QUADPACK heuristic, conservative).
    pub error: f64,
    pub evaluations: usize,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One Gauss–Kronrod 21 panel: (Kronrod value, error estimate).
pub fn gauss_kronrod21<F>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.is_finite() {
        return Err(Error::QuadratureNonConvergence {
            value,
            error: f64::INFINITY,
        });
    }
    Ok((value, err))
}

/// Largest power of two not exceeding `scale` (which must be positive).
pub fn dyadic_width(scale: f64) -> f64 {
    debug_assert!(scale > 0.0 && scale.is_finite());
    2f64.powi(scale.log2().floor() as i32)
}

/// Panels of width `width` with endpoints on the lattice `width·ℤ` that cover
/// [lo, hi], snapped outward.
pub fn dyadic_cover(lo: f64, hi: f64, width: f64) -> Vec<(f64, f64)> {
    let first = (lo / width).floor() as i64;
    let last = ((hi / width).ceil() as i64).max(first + 1);
    (first..last)
        .map(|i| (i as f64 * width, (i + 1) as f64 * width))
        .collect()
}

/// Globally adaptive integration: repeatedly bisect the panel with the largest
/// error estimate until the summed error meets `tol`.
pub fn integrate<F>(mut f: F, initial: &[(f64, f64)], tol: Tolerance, max_panels: usize) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut heap = BinaryHeap::with_capacity(initial.len() * 2);
    let mut evaluations = 0;
    let (mut total, mut total_err) = (0.0, 0.0);
    for &(a, b) in initial {
        let (value, error) = gauss_kronrod21(&mut f, a, b)?;
        evaluations += 21;
        total += value;
        total_err += error;
        heap.push(Panel { a, b, value, error });
    }

    while total_err > tol.target(total) {
        if heap.len() >= max_panels {
            return Err(Error::QuadratureNonConvergence {
                value: total,
                error: total_err,
            });
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // panel can no longer be split in floating point
            return Err(Error::QuadratureNonConvergence {
                value: total,
                error: total_err,
            });
        }
        let (v1, e1) = gauss_kronrod21(&mut f, worst.a, mid)?;
        let (v2, e2) = gauss_kronrod21(&mut f, mid, worst.b)?;
        evaluations += 42;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    }

    // Re-sum in positional order; the running totals drift by rounding.
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.value).sum();
    let error = panels.iter().map(|p| p.error).sum();
    Ok(QuadratureResult {
        value,
        error,
        evaluations,
        panels: panels.len(),
    })
}

/// Upper bound on the two-sided Gaussian tail mass P(|Z| > z) for z > 0,
/// from the Mills-ratio inequality.
pub fn gaussian_tail_bound(z: f64) -> f64 {
    2.0 * (-0.5 * z * z).exp() / (z * (2.0 * std::f64::consts::PI).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ok(f: impl Fn(f64) -> f64) -> impl FnMut(f64) -> Result<f64> {
        move |x| Ok(f(x))
    }

    #[test]
    fn polynomial_is_exact_on_one_panel() {
        let (v, _) = gauss_kronrod21(&mut ok(|x| x.powi(9) - 3.0 * x * x), -1.0, 2.0).unwrap();
        let exact = (2f64.powi(10) - 1.0) / 10.0 - (8.0 + 1.0);
        assert_relative_eq!(v, exact, max_relative = 1e-14);
    }

    #[test]
    fn gaussian_normalizes() {
        let s = 0.37;
        let f = ok(move |x: f64| (-0.5 * (x / s).powi(2)).exp() / (s * (2.0 * std::f64::consts::PI).sqrt()));
        let r = integrate(
            f,
            &dyadic_cover(-8.0 * s, 8.0 * s, dyadic_width(s)),
            Tolerance::default(),
            1000,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-12, "{}", r.value - 1.0);
        assert!(r.error < 1e-8);
    }

    #[test]
    fn adapts_to_a_kink() {
        let f = ok(|x: f64| (x - 0.3).abs());
        let r = integrate(f, &[(0.0, 1.0)], Tolerance { abs: 1e-12, rel: 1e-12 }, 10_000).unwrap();
        assert_relative_eq!(r.value, 0.5 * (0.09 + 0.49), max_relative = 1e-11);
        assert!(r.panels > 1);
    }

    #[test]
    fn reports_non_convergence() {
        let f = ok(|x: f64| 1.0 / x.abs().sqrt() * (1.0 / x).sin());
        let e = integrate(f, &[(0.0, 1.0)], Tolerance { abs: 0.0, rel: 1e-15 }, 20).unwrap_err();
        assert!(matches!(e, Error::QuadratureNonConvergence { .. }));
    }

    #[test]
    fn cover_snaps_outward_onto_lattice() {
        let w = dyadic_width(0.3);
        assert_eq!(w, 0.25);
        let panels = dyadic_cover(-0.1, 0.6, w);
        assert_eq!(panels, vec![(-0.25, 0.0), (0.0, 0.25), (0.25, 0.5), (0.5, 0.75)]);
    }

    #[test]
    fn mirrored_panels_have_mirrored_nodes() {
        let mut left = Vec::new();
        let mut right = Vec::new();
        gauss_kronrod21(
            &mut |x| {
                left.push(x);
                Ok(0.0)
            },
            -0.75,
            -0.5,
        )
        .unwrap();
        gauss_kronrod21(
            &mut |x| {
                right.push(x);
                Ok(0.0)
            },
            0.5,
            0.75,
        )
        .unwrap();
        let mut l: Vec<u64> = left.iter().map(|x| x.abs().to_bits()).collect();
        let mut r: Vec<u64> = right.iter().map(|x| x.to_bits()).collect();
        l.sort();
        r.sort();
        assert_eq!(l, r);
    }

    #[test]
    fn tail_bound_dominates_true_tail() {
        // P(|Z| > 3) = 0.0026997960632601866
        assert!(gaussian_tail_bound(3.0) >= 0.002_699_796);
        assert!(gaussian_tail_bound(8.0) < 1e-14);
    }
}
