//! Independent oracles for the integration and acceptance suites. Nothing
//! here calls into the quadrature or transfer-matrix code under test.

#![allow(dead_code)]

use std::f64::consts::PI;

use gws_fusion::units::{wave_number, HBAR_C};
use gws_fusion::Potential;

/// T(E) by Numerov integration of ψ'' = (2m/ħ²)(V - E) ψ on `n` uniform
/// steps over [-x_max, x_max], started from the transmitted wave e^{ikx} on
/// the right and matched to e^{±ikx} at the two leftmost grid points.
pub fn numerov_transmission(potential: &impl Potential, mass: f64, energy: f64, x_max: f64, n: usize) -> f64 {
    let k = wave_number(energy, mass);
    let h = 2.0 * x_max / n as f64;
    let c = 2.0 * mass / (HBAR_C * HBAR_C);
    let f = |j: usize| c * (potential.value(-x_max + j as f64 * h) - energy);
    let g = h * h / 12.0;

    // ψ as (re, im)
    let phase = |x: f64| ((k * x).cos(), (k * x).sin());
    let mut upper = phase(x_max); // ψ_{j+1}
    let mut here = phase(x_max - h); // ψ_j
    let mut f_upper = f(n);
    let mut f_here = f(n - 1);
    let mut log_scale = 0.0;
    for j in (1..n).rev() {
        let f_lower = f(j - 1);
        let a = 2.0 * (1.0 + 5.0 * g * f_here);
        let b = 1.0 - g * f_upper;
        let d = 1.0 - g * f_lower;
        let lower = ((a * here.0 - b * upper.0) / d, (a * here.1 - b * upper.1) / d);
        upper = here;
        here = lower;
        f_upper = f_here;
        f_here = f_lower;
        let size = here.0.abs().max(here.1.abs()).max(upper.0.abs()).max(upper.1.abs());
        if size > 1e100 {
            here = (here.0 / size, here.1 / size);
            upper = (upper.0 / size, upper.1 / size);
            log_scale += size.ln();
        }
    }
    // ψ_0 at x0 = -x_max, ψ_1 at x0 + h: ψ = A e^{ikx} + B e^{-ikx}
    let x0 = -x_max;
    let mul = |p: (f64, f64), q: (f64, f64)| (p.0 * q.0 - p.1 * q.1, p.0 * q.1 + p.1 * q.0);
    let sub = |p: (f64, f64), q: (f64, f64)| (p.0 - q.0, p.1 - q.1);
    let conj = |p: (f64, f64)| (p.0, -p.1);
    let (e0, e1) = (phase(x0), phase(x0 + h));
    // det = e^{ikx0} e^{-ik(x0+h)} - e^{-ikx0} e^{ik(x0+h)} = -2i sin(kh)
    let det = mul(e0, conj(e1));
    let det = sub(det, conj(det));
    let num = sub(mul(here, conj(e1)), mul(conj(e0), upper));
    let a_abs2 = (num.0 * num.0 + num.1 * num.1) / (det.0 * det.0 + det.1 * det.1);
    (-2.0 * log_scale).exp() / a_abs2
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1] by Newton
/// iteration on P_n.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

/// Composite Gauss–Legendre over `panels` equal panels of [a, b].
pub fn composite_gl(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, rule: &[(f64, f64)]) -> f64 {
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let c = a + (p as f64 + 0.5) * h;
        for &(x, w) in rule {
            sum += w * f(c + 0.5 * h * x);
        }
    }
    0.5 * h * sum
}

/// ⟨σv⟩ straight from the double integral over (k, K): πħ²/√(2m³) times
/// (ħ²k²/2m)^{-1/2} T P(k, K) w(K, β), both integrals done by brute force.
/// `t_of_k` must be even in k; `thermal_length` is √(βħ²/m).
pub fn reactivity_double_brute_force(
    t_of_k: impl Fn(f64) -> f64,
    mass: f64,
    xi: f64,
    thermal_length: f64,
    outer_panels: usize,
) -> f64 {
    let rule = gauss_legendre(10);
    let s = thermal_length;
    let packet = |k: f64, kk: f64| xi / (2.0 * PI).sqrt() * (-0.5 * (xi * (k - kk)).powi(2)).exp();
    let thermal = |kk: f64| s / (2.0 * PI).sqrt() * (-0.5 * (s * kk).powi(2)).exp();
    let inner = |k: f64| {
        let lo = (k - 9.0 / xi).max(-9.0 / s);
        let hi = (k + 9.0 / xi).min(9.0 / s);
        if lo >= hi {
            return 0.0;
        }
        composite_gl(|kk| packet(k, kk) * thermal(kk), lo, hi, 60, &rule)
    };
    let energy_factor = |k: f64| {
        // (ħ²k²/2m)^{-1/2}
        (2.0 * mass).sqrt() / (HBAR_C * k.abs())
    };
    let sigma_v_prefactor = PI * HBAR_C * HBAR_C / (2.0 * mass * mass * mass).sqrt();
    // the combined k-width of P·w is 1/ξ_eff with 1/ξ_eff² = 1/ξ² + 1/s²
    let k_top = 11.0 * (1.0 / (xi * xi) + 1.0 / (s * s)).sqrt();
    let half = composite_gl(
        |k| energy_factor(k) * t_of_k(k) * inner(k),
        0.0,
        k_top,
        outer_panels,
        &rule,
    );
    sigma_v_prefactor * 2.0 * half
}

/// Exponential integral E1(x) for x > 0.
pub fn exp_integral_e1(x: f64) -> f64 {
    const EULER: f64 = 0.577_215_664_901_532_9;
    if x < 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for n in 1..200 {
            term *= -x / n as f64;
            let add = term / n as f64;
            sum += add;
            if add.abs() < 1e-18 {
                break;
            }
        }
        -EULER - x.ln() - sum
    } else {
        // modified Lentz on the continued fraction
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// Piecewise-linear interpolation on a uniform table.
pub struct UniformTable {
    pub lo: f64,
    pub step: f64,
    pub values: Vec<f64>,
}

impl UniformTable {
    pub fn build(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> f64) -> Self {
        let step = (hi - lo) / (n - 1) as f64;
        Self {
            lo,
            step,
            values: (0..n).map(|i| f(lo + i as f64 * step)).collect(),
        }
    }

    pub fn get(&self, x: f64) -> Option<f64> {
        let u = (x - self.lo) / self.step;
        if u < 0.0 || u >= (self.values.len() - 1) as f64 {
            return None;
        }
        let i = u as usize;
        let t = u - i as f64;
        Some(self.values[i] * (1.0 - t) + self.values[i + 1] * t)
    }
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

#[test]
fn oracle_self_checks() {
    // E1 reference values (Abramowitz & Stegun table 5.1)
    assert!((exp_integral_e1(1.0) - 0.219_383_934_395_520_27).abs() < 1e-14);
    assert!((exp_integral_e1(0.5) - 0.559_773_594_776_160_8).abs() < 1e-13);
    assert!((exp_integral_e1(5.0) - 0.001_148_295_591_275_325_8).abs() < 1e-16);
    // 10-point GL integrates degree 19 exactly
    let rule = gauss_legendre(10);
    let v = composite_gl(|x| x.powi(19) + x.powi(18), -1.0, 1.0, 1, &rule);
    assert!((v - 2.0 / 19.0).abs() < 1e-14);
}
