//! Maxwell-Boltzmann averages and fusion reactivities.
//!
//! With the one-dimensional thermal density of the packet wave vector,
//! w(K, β) = (βħ²/(2πm))^{1/2} exp(-βħ²K²/(2m)), and σ(E) v(E) =
//! πħ²/√(2m³) · T(E)/√E, the double average over K and over the packet's own
//! k-distribution collapses to a single integral:
//!
//! ⟨σv⟩ = √(π/2) (ħ/m) ∫ T(ħ²k²/2m) ξ_eff exp(-ξ_eff² k²/2) dk/|k|,
//! 1/ξ_eff² = 1/ξ² + m/(βħ²).
//!
//! The 1/|k| comes from (ħ²k²/2m)^{-1/2} and is even in k. The integrand is
//! finite at k = 0 only because T vanishes there (T ∝ k² for a potential
//! without a zero-energy resonance); this is checked before integrating.
//!
//! Reactivities are one-dimensional: area × velocity in fm²·c.

use std::f64::consts::PI;

use crate::quadrature::{dyadic_cover, dyadic_width, gaussian_tail_bound, integrate, Tolerance};
use crate::transmission::{check_grid, TransmissionModel};
use crate::units::{kev_to_mev, wave_number, HBAR_C};
use crate::{Error, Result};

/// Upper k cutoff in units of 1/ξ_eff.
pub const K_CUTOFF: f64 = 10.0;

/// Wave number used to probe T(k)/k → 0.
pub const K_MIN: f64 = 1e-6;

const MAX_PANELS: usize = 4000;

/// How the packet width is chosen at each temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XiMode {
    /// Fixed positional spreading ξ in fm.
    Fixed(f64),
    /// ξ → ∞.
    PlaneWave,
    /// ξ = λ(β)/√2 with the thermal de Broglie wavelength λ(β).
    ThermalWavelength,
}

impl XiMode {
    pub fn label(&self) -> String {
        match self {
            XiMode::Fixed(xi) => format!("xi={xi}"),
            XiMode::PlaneWave => "plane".into(),
            XiMode::ThermalWavelength => "thermal".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalSpec {
    /// k_B T = β⁻¹ in keV.
    pub temperature_kev: f64,
    /// Reduced mass in MeV/c².
    pub reduced_mass: f64,
    pub xi_mode: XiMode,
}

impl ThermalSpec {
    pub fn new(temperature_kev: f64, reduced_mass: f64, xi_mode: XiMode) -> Result<Self> {
        let spec = Self {
            temperature_kev,
            reduced_mass,
            xi_mode,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.temperature_kev > 0.0 && self.temperature_kev.is_finite()) {
            return Err(Error::invalid("temperature", "must be positive and finite"));
        }
        if !(self.reduced_mass > 0.0 && self.reduced_mass.is_finite()) {
            return Err(Error::invalid("reduced_mass", "must be positive and finite"));
        }
        if let XiMode::Fixed(xi) = self.xi_mode {
            if !(xi > 0.0 && xi.is_finite()) {
                return Err(Error::invalid("xi", format!("must be positive and finite, got {xi}")));
            }
        }
        Ok(())
    }

    pub fn with_temperature(&self, temperature_kev: f64) -> Self {
        Self {
            temperature_kev,
            ..*self
        }
    }

    pub fn with_mode(&self, xi_mode: XiMode) -> Self {
        Self { xi_mode, ..*self }
    }

    /// β⁻¹ in MeV.
    pub fn kt(&self) -> f64 {
        kev_to_mev(self.temperature_kev)
    }

    /// √(βħ²/m) in fm: the thermal spread of K is its inverse.
    pub fn thermal_length(&self) -> f64 {
        HBAR_C / (self.reduced_mass * self.kt()).sqrt()
    }

    /// ξ for this spec's mode; `None` for plane waves.
    pub fn xi(&self) -> Option<f64> {
        match self.xi_mode {
            XiMode::Fixed(xi) => Some(xi),
            XiMode::PlaneWave => None,
            XiMode::ThermalWavelength => Some(thermal_wavelength_xi(self)),
        }
    }

    /// ξ_eff for this spec's mode.
    pub fn effective_spreading(&self) -> f64 {
        match self.xi() {
            Some(xi) => xi_eff(xi, self),
            None => self.thermal_length(),
        }
    }
}

/// w(K, β) in fm.
pub fn mb_density(k_char: f64, spec: &ThermalSpec) -> f64 {
    let s = spec.thermal_length();
    let z = s * k_char;
    s / (2.0 * PI).sqrt() * (-0.5 * z * z).exp()
}

/// (1/ξ² + m/(βħ²))^{-1/2}.
pub fn xi_eff(xi: f64, spec: &ThermalSpec) -> f64 {
    let s = spec.thermal_length();
    1.0 / (1.0 / (xi * xi) + 1.0 / (s * s)).sqrt()
}

/// Thermal de Broglie wavelength λ(β) = ħ √(2πβ/m), in fm.
pub fn thermal_wavelength(spec: &ThermalSpec) -> f64 {
    HBAR_C * (2.0 * PI / (spec.reduced_mass * spec.kt())).sqrt()
}

/// λ(β)/√2.
pub fn thermal_wavelength_xi(spec: &ThermalSpec) -> f64 {
    thermal_wavelength(spec) / 2f64.sqrt()
}

/// σ(E) v(E) = π ħ²/√(2m³) · T/√E, in fm²·c.
pub fn sigma_v(energy: f64, mass: f64, t_value: f64) -> f64 {
    PI * HBAR_C * HBAR_C * t_value / (2.0 * mass * mass * mass * energy).sqrt()
}

/// Same quantity as [`sigma_v`] via σ = πT/k² and v = ħk/m.
pub fn sigma_v_from_wave_number(energy: f64, mass: f64, t_value: f64) -> f64 {
    let k = wave_number(energy, mass);
    let sigma = PI * t_value / (k * k);
    let v = HBAR_C * k / mass;
    sigma * v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReactivityMethod {
    /// Single integral over k with ξ_eff.
    ReducedSingle,
    /// Nested integral over k and the packet wave vector K.
    DoubleIntegral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReactivityResult {
    /// ⟨σv⟩ in fm²·c.
    pub value: f64,
    pub xi_eff_used: f64,
    /// Absolute error estimate (quadrature plus truncated tail).
    pub quadrature_error: f64,
    pub method: ReactivityMethod,
}

fn check_mass(model: &impl TransmissionModel, spec: &ThermalSpec) -> Result<()> {
    spec.validate()?;
    let m = model.reduced_mass();
    if (m - spec.reduced_mass).abs() > 1e-12 * m {
        return Err(Error::invalid(
            "reduced_mass",
            format!(
                "thermal spec uses {} MeV but the transmission model {} MeV",
                spec.reduced_mass, m
            ),
        ));
    }
    Ok(())
}

fn guard_zero_energy(model: &impl TransmissionModel) -> Result<()> {
    let near_zero = model.transmission_at_wavenumber(K_MIN)? / K_MIN;
    let further = model.transmission_at_wavenumber(2.0 * K_MIN)? / (2.0 * K_MIN);
    if near_zero > 0.0 && near_zero >= further {
        return Err(Error::ZeroEnergyDivergence { near_zero, further });
    }
    Ok(())
}

/// ⟨σv⟩ from the reduced single integral, at the default tolerance.
pub fn reactivity(model: &impl TransmissionModel, spec: &ThermalSpec) -> Result<ReactivityResult> {
    reactivity_with_tolerance(model, spec, Tolerance { abs: 1e-14, rel: 1e-8 })
}

pub fn reactivity_with_tolerance(
    model: &impl TransmissionModel,
    spec: &ThermalSpec,
    tol: Tolerance,
) -> Result<ReactivityResult> {
    check_mass(model, spec)?;
    guard_zero_energy(model)?;
    let xe = spec.effective_spreading();
    reduced_integral(model, spec.reduced_mass, xe, tol)
}

/// ⟨σv⟩ for an explicitly given ξ_eff. Reactivities depend on (ξ, β) only
/// through this combination.
pub fn reactivity_for_xi_eff(model: &impl TransmissionModel, xi_eff: f64) -> Result<ReactivityResult> {
    if !(xi_eff > 0.0 && xi_eff.is_finite()) {
        return Err(Error::invalid("xi_eff", "must be positive and finite"));
    }
    guard_zero_energy(model)?;
    reduced_integral(model, model.reduced_mass(), xi_eff, Tolerance { abs: 1e-14, rel: 1e-8 })
}

fn reduced_integral(model: &impl TransmissionModel, mass: f64, xe: f64, tol: Tolerance) -> Result<ReactivityResult> {
    let spread = 1.0 / xe;
    let panels = dyadic_cover(0.0, K_CUTOFF * spread, dyadic_width(2.0 * spread));
    let r = integrate(
        |k| {
            let z = xe * k;
            Ok(model.transmission_at_wavenumber(k)? / k * xe * (-0.5 * z * z).exp())
        },
        &panels,
        tol,
        MAX_PANELS,
    )?;
    // ∫_{k_c}^∞ ξ e^{-ξ²k²/2}/k dk ≤ (ξ/k_c) ∫_{k_c}^∞ e^{-ξ²k²/2} dk
    let tail = (xe / (K_CUTOFF * spread)) * (PI / 2.0).sqrt() / xe * gaussian_tail_bound(K_CUTOFF);
    // even integrand: ∫_ℝ = 2 ∫_0^∞
    let prefactor = 2.0 * (PI / 2.0).sqrt() * HBAR_C / mass;
    Ok(ReactivityResult {
        value: prefactor * r.value,
        xi_eff_used: xe,
        quadrature_error: prefactor * (r.error + tail),
        method: ReactivityMethod::ReducedSingle,
    })
}

/// ⟨σv⟩ from the unreduced double integral: the K-average of the packet
/// density against the thermal density is done numerically at every k.
pub fn reactivity_double_integral(model: &impl TransmissionModel, spec: &ThermalSpec) -> Result<ReactivityResult> {
    check_mass(model, spec)?;
    guard_zero_energy(model)?;
    let s = spec.thermal_length();
    let xi = spec.xi();
    let xe = spec.effective_spreading();
    let inner_tol = Tolerance {
        abs: 1e-300,
        rel: 1e-11,
    };

    // ∫ P(k, K) w(K) dK for fixed k
    let smeared_weight = |k: f64| -> Result<f64> {
        let Some(xi) = xi else {
            // plane wave: P(k, K) = δ(k - K)
            let z = s * k;
            return Ok(s / (2.0 * PI).sqrt() * (-0.5 * z * z).exp());
        };
        let lo = (k - 8.0 / xi).max(-8.0 / s);
        let hi = (k + 8.0 / xi).min(8.0 / s);
        if lo >= hi {
            return Ok(0.0);
        }
        let width = 1.0 / (xi * xi + s * s).sqrt();
        let panels = dyadic_cover(lo, hi, dyadic_width(width));
        let r = integrate(
            |kk| {
                let (a, b) = (xi * (k - kk), s * kk);
                Ok(xi * s / (2.0 * PI) * (-0.5 * (a * a + b * b)).exp())
            },
            &panels,
            inner_tol,
            MAX_PANELS,
        )?;
        Ok(r.value)
    };

    let spread = 1.0 / xe;
    let panels = dyadic_cover(0.0, K_CUTOFF * spread, dyadic_width(2.0 * spread));
    let r = integrate(
        |k| Ok(model.transmission_at_wavenumber(k)? / k * smeared_weight(k)?),
        &panels,
        Tolerance { abs: 1e-15, rel: 1e-9 },
        MAX_PANELS,
    )?;
    // (πħ²/√(2m³)) (ħ²k²/2m)^{-1/2} = πħ/(m|k|), and ∫_ℝ = 2 ∫_0^∞
    let prefactor = 2.0 * PI * HBAR_C / spec.reduced_mass;
    Ok(ReactivityResult {
        value: prefactor * r.value,
        xi_eff_used: xe,
        quadrature_error: prefactor * r.error,
        method: ReactivityMethod::DoubleIntegral,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReactivityCurve {
    pub temps_kev: Vec<f64>,
    pub xi_mode: XiMode,
    pub results: Vec<ReactivityResult>,
}

impl ReactivityCurve {
    pub fn values(&self) -> Vec<f64> {
        self.results.iter().map(|r| r.value).collect()
    }
}

/// Reactivity at each temperature, with ξ resolved per temperature by `mode`.
pub fn reactivity_vs_temperature(
    model: &impl TransmissionModel,
    mode: XiMode,
    temps_kev: &[f64],
) -> Result<ReactivityCurve> {
    check_grid("temps_kev", temps_kev)?;
    let template = ThermalSpec::new(temps_kev[0], model.reduced_mass(), mode)?;
    let results = temps_kev
        .iter()
        .map(|&t| reactivity(model, &template.with_temperature(t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReactivityCurve {
        temps_kev: temps_kev.to_vec(),
        xi_mode: mode,
        results,
    })
}
