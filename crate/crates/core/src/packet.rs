//! Gaussian wave packets and packet-averaged transmission.
//!
//! ψ(x) = (2/(π ξ²))^{1/4} exp(-(x - x0)²/ξ² + i K x)
//! φ(k) = (2π)^{-1/4} √ξ exp(-ξ² (k - K)²/4) exp(i (K - k) x0)
//! P(k, K) = |φ(k)|² = ξ/√(2π) exp(-ξ² (k - K)²/2)
//!
//! The packet energy reported to users is ħ²K²/(2m). The true mean kinetic
//! energy is larger, ħ²(K² + 1/ξ²)/(2m).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::quadrature::{dyadic_cover, dyadic_width, gaussian_tail_bound, integrate, Tolerance};
use crate::transmission::TransmissionModel;
use crate::units::{kinetic_energy, wave_number};
use crate::{Error, Result};

/// Half-width of the k-window, in units of the momentum spread 1/ξ.
pub const WINDOW_SIGMAS: f64 = 8.0;

const MAX_PANELS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket {
    /// Positional spreading ξ (fm). |ψ|² has standard deviation ξ/2 and P(k, K)
    /// has 1/ξ.
    pub xi: f64,
    /// Characteristic wave vector K (fm⁻¹).
    pub k_char: f64,
    /// Initial centre (fm). Enters only as a phase.
    pub x0: f64,
}

impl GaussianPacket {
    pub fn new(xi: f64, k_char: f64) -> Result<Self> {
        Self::centered_at(xi, k_char, 0.0)
    }

    pub fn centered_at(xi: f64, k_char: f64, x0: f64) -> Result<Self> {
        if !(xi > 0.0 && xi.is_finite()) {
            return Err(Error::invalid("xi", format!("must be positive and finite, got {xi}")));
        }
        if !k_char.is_finite() || !x0.is_finite() {
            return Err(Error::invalid("k_char", "must be finite"));
        }
        Ok(Self { xi, k_char, x0 })
    }

    /// Packet moving to the right with ħ²K²/(2m) = `energy`.
    pub fn with_energy(xi: f64, energy: f64, mass: f64) -> Result<Self> {
        if !(energy >= 0.0) {
            return Err(Error::invalid("energy", "must be non-negative"));
        }
        Self::new(xi, wave_number(energy, mass))
    }

    /// ħ²K²/(2m), the energy convention used for packets throughout.
    pub fn energy(&self, mass: f64) -> f64 {
        kinetic_energy(self.k_char, mass)
    }

    /// ħ²⟨k²⟩/(2m) = ħ²(K² + 1/ξ²)/(2m).
    pub fn mean_kinetic_energy(&self, mass: f64) -> f64 {
        self.energy(mass) + kinetic_energy(1.0 / self.xi, mass)
    }

    pub fn wavefunction(&self, x: f64) -> Complex64 {
        let norm = (2.0 / (PI * self.xi * self.xi)).powf(0.25);
        let d = (x - self.x0) / self.xi;
        Complex64::from_polar(norm * (-d * d).exp(), self.k_char * x)
    }

    pub fn momentum_amplitude(&self, k: f64) -> Complex64 {
        let norm = self.xi.sqrt() / (2.0 * PI).powf(0.25);
        let d = self.xi * (k - self.k_char);
        Complex64::from_polar(norm * (-0.25 * d * d).exp(), (self.k_char - k) * self.x0)
    }

    /// P(k, K) in fm.
    pub fn momentum_density(&self, k: f64) -> f64 {
        let d = self.xi * (k - self.k_char);
        self.xi / (2.0 * PI).sqrt() * (-0.5 * d * d).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketTransmission {
    pub value: f64,
    /// Quadrature error estimate.
    pub error: f64,
    /// Bound on the probability mass outside the k-window (T ≤ 1 there).
    pub tail_bound: f64,
}

/// T̄(ξ, K) = ∫ T(ħ²k²/2m) P(k, K) dk over k ∈ ℝ, truncated at |k - K| = 8/ξ.
pub fn packet_transmission(model: &impl TransmissionModel, packet: &GaussianPacket) -> Result<PacketTransmission> {
    let spread = 1.0 / packet.xi;
    let lo = packet.k_char - WINDOW_SIGMAS * spread;
    let hi = packet.k_char + WINDOW_SIGMAS * spread;
    let panels = dyadic_cover(lo, hi, dyadic_width(2.0 * spread));
    let r = integrate(
        |k| Ok(model.transmission_at_wavenumber(k)? * packet.momentum_density(k)),
        &panels,
        Tolerance::default(),
        MAX_PANELS,
    )?;
    Ok(PacketTransmission {
        value: r.value.clamp(0.0, 1.0),
        error: r.error,
        tail_bound: gaussian_tail_bound(WINDOW_SIGMAS),
    })
}

/// Packet-averaged transmission on a grid of packet energies ħ²K²/(2m).
pub fn packet_transmission_curve(model: &impl TransmissionModel, xi: f64, energies: &[f64]) -> Result<Vec<f64>> {
    crate::transmission::check_grid("e_grid", energies)?;
    energies
        .iter()
        .map(|&e| {
            let packet = GaussianPacket::with_energy(xi, e, model.reduced_mass())?;
            packet_transmission(model, &packet)
                .map(|p| p.value)
                .map_err(|source| Error::AtEnergy {
                    energy: e,
                    source: Box::new(source),
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transmission::AnalyticTransmission;
    use crate::units::AMU;
    use approx::assert_relative_eq;

    fn moments(p: &GaussianPacket) -> (f64, f64, f64) {
        let s = 1.0 / p.xi;
        let panels = dyadic_cover(p.k_char - 12.0 * s, p.k_char + 12.0 * s, dyadic_width(s));
        let tol = Tolerance { abs: 1e-14, rel: 1e-11 };
        let m = |f: &dyn Fn(f64) -> f64| {
            integrate(|k| Ok(f(k) * p.momentum_density(k)), &panels, tol, 1000)
                .unwrap()
                .value
        };
        (m(&|_| 1.0), m(&|k| k), m(&|k| (k - p.k_char).powi(2)))
    }

    #[test]
    fn peak_value() {
        let p = GaussianPacket::new(8.0, 0.1).unwrap();
        assert_relative_eq!(p.momentum_density(0.1), 8.0 / (2.0 * PI).sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn density_normalization_and_variance() {
        for xi in [0.5, 2.0, 8.0, 128.0, 1e4] {
            let p = GaussianPacket::new(xi, 0.07).unwrap();
            let (norm, mean, var) = moments(&p);
            assert!((norm - 1.0).abs() < 1e-10, "xi={xi}: {norm}");
            assert_relative_eq!(mean, 0.07, max_relative = 1e-9);
            assert_relative_eq!(var, 1.0 / (xi * xi), max_relative = 1e-8);
        }
    }

    #[test]
    fn amplitude_squares_to_density_for_any_center() {
        for x0 in [0.0, 17.0, -3.5] {
            let p = GaussianPacket::centered_at(3.0, 0.2, x0).unwrap();
            for k in [-0.5, 0.0, 0.2, 0.9] {
                assert_relative_eq!(
                    p.momentum_amplitude(k).norm_sqr(),
                    p.momentum_density(k),
                    max_relative = 1e-13
                );
            }
        }
    }

    #[test]
    fn constant_transmission_averages_to_itself() {
        let model = AnalyticTransmission::new(AMU, |_| 0.25);
        let p = GaussianPacket::with_energy(2.0, 0.1, AMU).unwrap();
        let t = packet_transmission(&model, &p).unwrap();
        assert_relative_eq!(t.value, 0.25, max_relative = 1e-10);
        assert!(t.tail_bound < 1e-14);
    }

    #[test]
    fn quadratic_transmission_picks_up_momentum_variance() {
        // T = E/E0 = c k² ⇒ T̄ = c (K² + 1/ξ²)
        let e0 = 1e4;
        let model = AnalyticTransmission::new(AMU, move |e| e / e0);
        let p = GaussianPacket::with_energy(4.0, 0.3, AMU).unwrap();
        let expected = p.mean_kinetic_energy(AMU) / e0;
        assert_relative_eq!(
            packet_transmission(&model, &p).unwrap().value,
            expected,
            max_relative = 1e-9
        );
    }

    #[test]
    fn center_only_changes_the_phase() {
        let model = AnalyticTransmission::new(AMU, |e| e / (e + 0.3));
        let a = GaussianPacket::centered_at(8.0, 0.05, 0.0).unwrap();
        let b = GaussianPacket::centered_at(8.0, 0.05, 17.0).unwrap();
        let ta = packet_transmission(&model, &a).unwrap().value;
        let tb = packet_transmission(&model, &b).unwrap().value;
        assert_eq!(ta.to_bits(), tb.to_bits());
    }

    #[test]
    fn rejects_nonpositive_width() {
        assert!(GaussianPacket::new(0.0, 0.1).is_err());
        assert!(GaussianPacket::new(-2.0, 0.1).is_err());
        assert!(GaussianPacket::new(f64::NAN, 0.1).is_err());
    }
}
