//! Unit conventions shared by the whole crate.
//!
//! Energies are in MeV, lengths in fm, masses in MeV/c². Velocities are
//! expressed as fractions of c, so a reactivity (area × velocity) comes out
//! in fm²·c. Temperatures enter the public API in keV.

/// ħc in MeV·fm (CODATA 2018).
pub const HBAR_C: f64 = 197.326_980_4;

/// Atomic mass unit in MeV/c² (CODATA 2018).
pub const AMU: f64 = 931.494_102_42;

/// Wave number (fm⁻¹) of a particle of mass `mass` (MeV/c²) with kinetic energy `energy` (MeV).
#[inline]
pub fn wave_number(energy: f64, mass: f64) -> f64 {
    (2.0 * mass * energy).sqrt() / HBAR_C
}

/// Kinetic energy ħ²k²/(2m) in MeV.
#[inline]
pub fn kinetic_energy(k: f64, mass: f64) -> f64 {
    let p = HBAR_C * k;
    p * p / (2.0 * mass)
}

#[inline]
pub fn kev_to_mev(t: f64) -> f64 {
    t * 1e-3
}

/// Reduced mass of the two fusing nuclei.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticlePair {
    reduced_mass: f64,
}

impl ParticlePair {
    /// Reduced mass given directly in MeV/c².
    pub fn from_reduced_mass(reduced_mass: f64) -> crate::Result<Self> {
        if !(reduced_mass > 0.0 && reduced_mass.is_finite()) {
            return Err(crate::Error::invalid("reduced_mass", "must be positive and finite"));
        }
        Ok(Self { reduced_mass })
    }

    pub fn from_reduced_amu(m: f64) -> crate::Result<Self> {
        Self::from_reduced_mass(m * AMU)
    }

    /// Two nucleus masses in a.m.u.; m = m_a m_b / (m_a + m_b).
    pub fn from_nuclei_amu(m_a: f64, m_b: f64) -> crate::Result<Self> {
        if !(m_a > 0.0 && m_b > 0.0) {
            return Err(crate::Error::invalid(
                "masses_amu",
                "both nucleus masses must be positive",
            ));
        }
        Self::from_reduced_amu(m_a * m_b / (m_a + m_b))
    }

    /// MeV/c².
    pub fn reduced_mass(&self) -> f64 {
        self.reduced_mass
    }

    pub fn reduced_mass_amu(&self) -> f64 {
        self.reduced_mass / AMU
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn energy_and_wave_number_invert() {
        let k = wave_number(0.37, AMU);
        assert_relative_eq!(kinetic_energy(k, AMU), 0.37, max_relative = 1e-14);
    }

    #[test]
    fn equal_nuclei_halve_the_mass() {
        let pair = ParticlePair::from_nuclei_amu(2.0, 2.0).unwrap();
        assert_relative_eq!(pair.reduced_mass_amu(), 1.0, max_relative = 1e-15);
        let carbon = ParticlePair::from_nuclei_amu(12.0, 12.0).unwrap();
        assert_relative_eq!(carbon.reduced_mass_amu(), 6.0, max_relative = 1e-15);
    }

    #[test]
    fn rejects_nonpositive_masses() {
        assert!(ParticlePair::from_reduced_mass(0.0).is_err());
        assert!(ParticlePair::from_nuclei_amu(-1.0, 2.0).is_err());
    }
}
