//! Generalized Woods-Saxon (GWS) potential and its barrier/well geometry.
//!
//! V(x) = -V0 / (1 + e^{a(|x|-L)}) + W0 e^{a(|x|-L)} / (1 + e^{a(|x|-L)})²
//!
//! Written in terms of s = 1/(1 + e^{a(|x|-L)}) ∈ (0, 1) this is
//! V = -V0 s + W0 s (1 - s), which never overflows.

use crate::{Error, Result};

/// A real potential energy V(x) in MeV on the line (x in fm).
pub trait Potential {
    fn value(&self, x: f64) -> f64;
}

/// V ≡ 0. Used to check that a barrier-free region transmits perfectly.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreePotential;

impl Potential for FreePotential {
    fn value(&self, _x: f64) -> f64 {
        0.0
    }
}

/// The four GWS parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    /// Well strength V0 (MeV).
    pub v0: f64,
    /// Barrier strength W0 (MeV).
    pub w0: f64,
    /// Surface diffuseness a (fm⁻¹).
    pub a: f64,
    /// Well half-size L (fm).
    pub l: f64,
}

impl Default for PotentialParams {
    /// a = 0.6 fm⁻¹, L = 5 fm, V0 = 45 MeV, W0 = 56 MeV: a light-nucleus
    /// barrier of 0.540 MeV on top of a 40.336 MeV deep well.
    fn default() -> Self {
        Self {
            v0: 45.0,
            w0: 56.0,
            a: 0.6,
            l: 5.0,
        }
    }
}

impl PotentialParams {
    pub fn new(v0: f64, w0: f64, a: f64, l: f64) -> Result<Self> {
        let p = Self { v0, w0, a, l };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("v0", self.v0), ("w0", self.w0), ("a", self.a), ("l", self.l)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::invalid(name, format!("must be positive and finite, got {v}")));
            }
        }
        if self.w0 <= self.v0 {
            return Err(Error::invalid(
                "w0",
                format!(
                    "must exceed v0 for a positive barrier (w0 = {}, v0 = {})",
                    self.w0, self.v0
                ),
            ));
        }
        Ok(())
    }

    /// Occupation-like factor s = 1/(1 + e^{a(|x|-L)}).
    #[inline]
    fn sigmoid(&self, x: f64) -> f64 {
        let z = self.a * (x.abs() - self.l);
        if z > 0.0 {
            let e = (-z).exp();
            e / (1.0 + e)
        } else {
            1.0 / (1.0 + z.exp())
        }
    }

    /// V(x) in MeV.
    #[inline]
    pub fn potential(&self, x: f64) -> f64 {
        let s = self.sigmoid(x);
        -self.v0 * s + self.w0 * s * (1.0 - s)
    }

    /// Default truncation of the scattering domain: L + 40/a.
    pub fn default_x_max(&self) -> f64 {
        self.l + 40.0 / self.a
    }

    pub fn barrier_height(&self) -> f64 {
        let d = self.w0 - self.v0;
        d * d / (4.0 * self.w0)
    }

    pub fn barrier_position(&self) -> f64 {
        self.l + ((self.v0 + self.w0) / (self.w0 - self.v0)).ln() / self.a
    }

    pub fn well_zero_crossing(&self) -> f64 {
        self.l + (self.v0 / (self.w0 - self.v0)).ln() / self.a
    }

    pub fn well_depth(&self) -> f64 {
        -self.potential(0.0)
    }
}

impl Potential for PotentialParams {
    fn value(&self, x: f64) -> f64 {
        self.potential(x)
    }
}

/// Geometry of the barrier and of the well on the positive half-line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierMetrics {
    /// max V(x) for x ≥ 0, in MeV.
    pub barrier_height: f64,
    /// argmax of V, in fm.
    pub barrier_position: f64,
    /// -V(0), in MeV.
    pub well_depth: f64,
    /// Smallest x > 0 with V(x) = 0, in fm. This is the "well width" of the
    /// usual presentation of these parameters (7.35 fm for the defaults).
    pub well_zero_crossing: f64,
}

const SCAN_STEP: f64 = 1e-3;
const METRIC_TOL: f64 = 1e-6;

/// Closed-form barrier metrics, cross-checked against a dense numerical scan
/// of V on [0, L + 40/a].
///
/// The maximum of -V0 s + W0 s(1-s) over s is at s* = (W0 - V0)/(2 W0),
/// giving V_max = (W0 - V0)²/(4 W0).
pub fn barrier_metrics(params: &PotentialParams) -> Result<BarrierMetrics> {
    params.validate()?;
    let m = BarrierMetrics {
        barrier_height: params.barrier_height(),
        barrier_position: params.barrier_position(),
        well_depth: params.well_depth(),
        well_zero_crossing: params.well_zero_crossing(),
    };
    if !(m.well_depth > 0.0) {
        return Err(Error::invalid("v0", format!("V(0) = {} is not a well", -m.well_depth)));
    }
    if !(m.well_zero_crossing > 0.0) {
        return Err(Error::invalid(
            "l",
            "the well does not extend to positive x (zero crossing at x <= 0)",
        ));
    }
    verify_by_scan(params, &m)?;
    Ok(m)
}

fn verify_by_scan(p: &PotentialParams, m: &BarrierMetrics) -> Result<()> {
    let v = |x: f64| p.potential(x);
    let x_end = p.default_x_max();
    let n = (x_end / SCAN_STEP).ceil() as usize;

    let mut best = (0.0, v(0.0));
    let mut crossing = None;
    let mut prev = best;
    for i in 1..=n {
        let x = i as f64 * SCAN_STEP;
        let vx = v(x);
        if vx > best.1 {
            best = (x, vx);
        }
        if crossing.is_none() && prev.1 < 0.0 && vx >= 0.0 {
            crossing = Some((prev.0, x));
        }
        prev = (x, vx);
    }

    let (lo, hi) = (best.0 - SCAN_STEP, best.0 + SCAN_STEP);
    let x_peak = golden_max(v, lo.max(0.0), hi, 1e-11);
    let v_peak = v(x_peak);
    let zero = match crossing {
        Some((a, b)) => bisect_zero(v, a, b, 1e-12),
        None => return Err(Error::Internal("scan found no zero crossing of V".into())),
    };
    let mut v_min = v(0.0);
    for i in 1..=n {
        v_min = v_min.min(v(i as f64 * SCAN_STEP));
    }

    let checks = [
        ("barrier_height", m.barrier_height, v_peak),
        ("barrier_position", m.barrier_position, x_peak),
        ("well_zero_crossing", m.well_zero_crossing, zero),
        ("well_depth", m.well_depth, -v_min),
    ];
    for (name, closed, scanned) in checks {
        if (closed - scanned).abs() > METRIC_TOL {
            return Err(Error::Internal(format!(
                "{name}: closed form {closed} disagrees with scan {scanned}"
            )));
        }
    }
    Ok(())
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn bisect_zero(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    while b - a > tol {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}
