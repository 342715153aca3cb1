//! Studies built on the reactivity: enhancement of thermal-wavelength packets
//! over plane waves, and the dependence of the reactivity on the packet width.

use crate::optimize::{log_spaced, maximize_log, Maximum, MaximumLocation};
use crate::thermal::{reactivity, reactivity_vs_temperature, thermal_wavelength_xi, ThermalSpec, XiMode};
use crate::transmission::{check_grid, TransmissionModel};
use crate::{Error, Result};

/// Samples in the coarse scan that seeds the golden-section search.
pub const COARSE_SCAN_POINTS: usize = 40;

/// Relative bracket width at which the ξ search stops.
pub const XI_RELATIVE_WIDTH: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct RatioCurve {
    pub temps_kev: Vec<f64>,
    pub ratios: Vec<f64>,
    pub reduced_mass: f64,
}

/// Reactivity with ξ = λ(β)/√2 divided by the plane-wave reactivity, per temperature.
pub fn enhancement_ratio(model: &impl TransmissionModel, temps_kev: &[f64]) -> Result<RatioCurve> {
    enhancement_ratio_between(model, temps_kev, XiMode::ThermalWavelength, XiMode::PlaneWave)
}

/// Element-wise quotient of two reactivity-vs-temperature runs.
pub fn enhancement_ratio_between(
    model: &impl TransmissionModel,
    temps_kev: &[f64],
    numerator: XiMode,
    denominator: XiMode,
) -> Result<RatioCurve> {
    let num = reactivity_vs_temperature(model, numerator, temps_kev)?;
    let den = reactivity_vs_temperature(model, denominator, temps_kev)?;
    let ratios = num
        .results
        .iter()
        .zip(&den.results)
        .map(|(n, d)| n.value / d.value)
        .collect();
    Ok(RatioCurve {
        temps_kev: temps_kev.to_vec(),
        ratios,
        reduced_mass: model.reduced_mass(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct XiScan {
    pub temperature_kev: f64,
    pub xis: Vec<f64>,
    pub reactivities: Vec<f64>,
    /// Best sample (ξ, ⟨σv⟩), present only when it is not an end of the scan.
    pub optimum: Option<(f64, f64)>,
}

/// Reactivity at fixed temperature for each ξ in `xis`.
///
/// Intended for log-spaced grids spanning a few decades around 1–10³ fm.
pub fn xi_scan(model: &impl TransmissionModel, temperature_kev: f64, xis: &[f64]) -> Result<XiScan> {
    check_grid("xis_fm", xis)?;
    if xis.len() < 3 {
        return Err(Error::invalid("xis_fm", "a scan needs at least 3 widths"));
    }
    let base = ThermalSpec::new(temperature_kev, model.reduced_mass(), XiMode::PlaneWave)?;
    let reactivities = xis
        .iter()
        .map(|&xi| reactivity(model, &base.with_mode(XiMode::Fixed(xi))).map(|r| r.value))
        .collect::<Result<Vec<_>>>()?;
    let best = reactivities
        .iter()
        .enumerate()
        .fold(0, |b, (i, &v)| if v > reactivities[b] { i } else { b });
    let optimum = (best > 0 && best < xis.len() - 1).then(|| (xis[best], reactivities[best]));
    Ok(XiScan {
        temperature_kev,
        xis: xis.to_vec(),
        reactivities,
        optimum,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiOptimum {
    pub xi: f64,
    pub reactivity: f64,
    /// Interior maximum, or the bracket end where the coarse scan peaked.
    pub location: MaximumLocation,
    pub evaluations: usize,
}

impl XiOptimum {
    pub fn is_interior(&self) -> bool {
        self.location == MaximumLocation::Interior
    }
}

impl From<Maximum> for XiOptimum {
    fn from(m: Maximum) -> Self {
        Self {
            xi: m.x,
            reactivity: m.value,
            location: m.location,
            evaluations: m.evaluations,
        }
    }
}

/// ξ maximizing the reactivity at one temperature, searched within `bracket`.
pub fn optimal_xi(model: &impl TransmissionModel, temperature_kev: f64, bracket: (f64, f64)) -> Result<XiOptimum> {
    let base = ThermalSpec::new(temperature_kev, model.reduced_mass(), XiMode::PlaneWave)?;
    let m = maximize_log(
        |xi| reactivity(model, &base.with_mode(XiMode::Fixed(xi))).map(|r| r.value),
        bracket.0,
        bracket.1,
        COARSE_SCAN_POINTS,
        XI_RELATIVE_WIDTH,
    )?;
    Ok(m.into())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalDot {
    pub temperature_kev: f64,
    /// λ(β)/√2 in fm.
    pub xi: f64,
    pub reactivity: f64,
}

/// (λ(β)/√2, ⟨σv⟩) per temperature, for overlay on [`xi_scan`] curves.
pub fn thermal_dot_overlay(model: &impl TransmissionModel, temps_kev: &[f64]) -> Result<Vec<ThermalDot>> {
    check_grid("temps_kev", temps_kev)?;
    temps_kev
        .iter()
        .map(|&t| {
            let spec = ThermalSpec::new(t, model.reduced_mass(), XiMode::ThermalWavelength)?;
            let r = reactivity(model, &spec)?;
            Ok(ThermalDot {
                temperature_kev: t,
                xi: thermal_wavelength_xi(&spec),
                reactivity: r.value,
            })
        })
        .collect()
}

/// Default ξ grid for scans: 121 log-spaced widths over [1, 10⁴] fm.
pub fn default_xi_grid() -> Vec<f64> {
    log_spaced(1.0, 1e4, 121)
}
