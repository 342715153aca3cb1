//! Plane-wave transmission T(E) through a one-dimensional potential.
//!
//! The potential on [-x_max, x_max] is replaced by `n_slices` constant slices
//! (value at the slice midpoint) and the exact slice propagators are chained.
//! Outside the window the wave is free. Starting from the purely transmitted
//! wave e^{ikx} on the right, (ψ, ψ') is carried back to the left edge and
//! split into incident and reflected parts, so t = 1/A and r = B/A.
//!
//! Each slice propagator is real with unit determinant; classically forbidden
//! slices use cosh/sinh instead of complex exponentials. The state is
//! rescaled whenever it grows large and the scale is tracked in log form, so
//! arbitrarily small T stays representable.
//!
//! The midpoint scheme is second order in the slice width. Every solve is
//! done on the base grid and on a grid refined by `refine_factor`; their
//! relative difference is the convergence check and their Richardson
//! combination is the returned value.

use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;

use crate::potential::{Potential, PotentialParams};
use crate::units::{kinetic_energy, wave_number, HBAR_C};
use crate::{Error, Result};

/// Largest |T + R - 1| tolerated before a solve is declared broken.
pub const FLUX_TOLERANCE: f64 = 1e-8;

const RESCALE_ABOVE: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Half-width of the scattering window in fm; V is taken as 0 beyond it.
    pub x_max: f64,
    /// Number of constant slices on [-x_max, x_max] for the base grid.
    pub n_slices: usize,
    /// Required bound on |V(±x_max)| in MeV.
    pub v_tail_tol: f64,
    /// Refinement multiplier for the convergence check.
    pub refine_factor: usize,
    /// Largest relative change of T between base and refined grids.
    pub convergence_tol: f64,
}

impl SolverConfig {
    pub const DEFAULT_N_SLICES: usize = 20_000;

    /// Defaults for a GWS potential: x_max = L + 40/a.
    pub fn for_potential(params: &PotentialParams) -> Self {
        Self::with_x_max(params.default_x_max())
    }

    pub fn with_x_max(x_max: f64) -> Self {
        Self {
            x_max,
            n_slices: Self::DEFAULT_N_SLICES,
            v_tail_tol: 1e-12,
            refine_factor: 2,
            convergence_tol: 1e-4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_max > 0.0 && self.x_max.is_finite()) {
            return Err(Error::invalid("x_max", "must be positive and finite"));
        }
        if self.n_slices < 1000 {
            return Err(Error::invalid(
                "n_slices",
                format!("must be at least 1000, got {}", self.n_slices),
            ));
        }
        if !(self.v_tail_tol > 0.0) {
            return Err(Error::invalid("v_tail_tol", "must be positive"));
        }
        if self.refine_factor < 2 {
            return Err(Error::invalid("refine_factor", "must be at least 2"));
        }
        if !(self.convergence_tol > 0.0) {
            return Err(Error::invalid("convergence_tol", "must be positive"));
        }
        Ok(())
    }
}

/// Slice potentials, run-length encoded: consecutive equal values are
/// propagated as one wider slice, which is exact for a constant potential.
#[derive(Debug, Clone)]
struct SliceGrid {
    runs: Vec<(f64, f64)>,
}

impl SliceGrid {
    fn new(potential: &impl Potential, x_max: f64, n: usize) -> Self {
        let width = 2.0 * x_max / n as f64;
        let mut runs: Vec<(f64, usize)> = Vec::new();
        for j in 0..n {
            let v = potential.value(-x_max + (j as f64 + 0.5) * width);
            match runs.last_mut() {
                Some((last, count)) if *last == v => *count += 1,
                _ => runs.push((v, 1)),
            }
        }
        let runs = runs.into_iter().map(|(v, c)| (v, c as f64 * width)).collect();
        Self { runs }
    }
}

/// Outcome of one stationary scattering solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scattering {
    pub energy: f64,
    pub transmission: f64,
    pub reflection: f64,
    /// Worst |T + R - 1| over the individual grid solves.
    pub flux_defect: f64,
    /// Estimated relative error of the refined-grid T.
    pub convergence_estimate: f64,
    /// T on the base and the refined grid, before extrapolation.
    pub coarse: f64,
    pub refined: f64,
}

#[derive(Debug, Clone, Copy)]
struct RawSolve {
    transmission: f64,
    reflection: f64,
}

/// Transfer-matrix solver with the slice potentials precomputed.
#[derive(Debug, Clone)]
pub struct TransferMatrixSolver {
    mass: f64,
    config: SolverConfig,
    base: SliceGrid,
    refined: SliceGrid,
}

impl TransferMatrixSolver {
    pub fn new(potential: &impl Potential, mass: f64, config: &SolverConfig) -> Result<Self> {
        config.validate()?;
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::invalid("mass", "must be positive and finite"));
        }
        let tail = potential
            .value(config.x_max)
            .abs()
            .max(potential.value(-config.x_max).abs());
        if !(tail < config.v_tail_tol) {
            return Err(Error::TailTooLarge {
                tail,
                tol: config.v_tail_tol,
            });
        }
        Ok(Self {
            mass,
            config: *config,
            base: SliceGrid::new(potential, config.x_max, config.n_slices),
            refined: SliceGrid::new(potential, config.x_max, config.n_slices * config.refine_factor),
        })
    }

    /// Solver for a GWS potential; additionally requires the window to contain the barrier top.
    pub fn for_gws(params: &PotentialParams, mass: f64, config: &SolverConfig) -> Result<Self> {
        params.validate()?;
        if config.x_max <= params.barrier_position() {
            return Err(Error::invalid(
                "x_max",
                format!("must exceed the barrier position {} fm", params.barrier_position()),
            ));
        }
        Self::new(params, mass, config)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// Full solve at energy `energy` (MeV) with the convergence and flux checks.
    pub fn solve(&self, energy: f64) -> Result<Scattering> {
        if !(energy > 0.0 && energy.is_finite()) {
            return Err(Error::invalid(
                "energy",
                format!("must be positive and finite, got {energy}"),
            ));
        }
        let coarse = self.solve_on(&self.base, energy);
        let fine = self.solve_on(&self.refined, energy);
        let flux_defect = coarse.defect().max(fine.defect());
        if !(flux_defect < FLUX_TOLERANCE) {
            return Err(Error::FluxDefect {
                energy,
                defect: flux_defect,
            });
        }

        // both grids underflow together when T is below the f64 range
        let change = if fine.transmission == 0.0 && coarse.transmission == 0.0 {
            0.0
        } else {
            (fine.transmission - coarse.transmission).abs() / fine.transmission
        };
        if !(change <= self.config.convergence_tol) {
            return Err(Error::NonConvergence {
                energy,
                coarse: coarse.transmission,
                refined: fine.transmission,
            });
        }

        let r2 = (self.config.refine_factor * self.config.refine_factor) as f64;
        let extrapolate = |c: f64, f: f64| ((r2 * f - c) / (r2 - 1.0)).clamp(0.0, 1.0);
        let transmission = extrapolate(coarse.transmission, fine.transmission);
        let reflection = extrapolate(coarse.reflection, fine.reflection);
        Ok(Scattering {
            energy,
            transmission,
            reflection,
            flux_defect,
            convergence_estimate: change / (r2 - 1.0),
            coarse: coarse.transmission,
            refined: fine.transmission,
        })
    }

    pub fn transmission(&self, energy: f64) -> Result<f64> {
        self.solve(energy).map(|s| s.transmission)
    }

    /// T on a single grid of `n` slices, without extrapolation. Meant for
    /// convergence studies.
    pub fn single_grid_transmission(&self, potential: &impl Potential, energy: f64, n: usize) -> f64 {
        let grid = SliceGrid::new(potential, self.config.x_max, n);
        self.solve_on(&grid, energy).transmission
    }

    fn solve_on(&self, grid: &SliceGrid, energy: f64) -> RawSolve {
        let k = wave_number(energy, self.mass);
        let to_q2 = 2.0 * self.mass / (HBAR_C * HBAR_C);
        let ik = Complex64::new(0.0, k);

        let mut psi = Complex64::from_polar(1.0, k * self.config.x_max);
        let mut dpsi = ik * psi;
        let mut log_scale = 0.0;

        for &(v, h) in grid.runs.iter().rev() {
            let q2 = to_q2 * (energy - v);
            // backward propagator over one slice; its (2,2) entry equals (1,1)
            let (m11, m12, m21) = if q2 > 0.0 {
                let q = q2.sqrt();
                let (s, c) = (q * h).sin_cos();
                (c, -s / q, q * s)
            } else if q2 < 0.0 {
                let kappa = (-q2).sqrt();
                let (sh, ch) = ((kappa * h).sinh(), (kappa * h).cosh());
                (ch, -sh / kappa, -kappa * sh)
            } else {
                (1.0, -h, 0.0)
            };
            let next_psi = psi * m11 + dpsi * m12;
            dpsi = psi * m21 + dpsi * m11;
            psi = next_psi;

            let size = psi.norm_sqr().max(dpsi.norm_sqr() / (k * k + 1.0));
            if size > RESCALE_ABOVE {
                let s = size.sqrt();
                psi /= s;
                dpsi /= s;
                log_scale += s.ln();
            }
        }

        let slope = dpsi / ik;
        let incident = 0.5 * (psi + slope).norm();
        let reflected = 0.5 * (psi - slope).norm();
        let ratio = reflected / incident;
        RawSolve {
            transmission: (-2.0 * log_scale).exp() / (incident * incident),
            reflection: ratio * ratio,
        }
    }
}

impl RawSolve {
    fn defect(&self) -> f64 {
        (self.transmission + self.reflection - 1.0).abs()
    }
}

/// T(E) for a GWS potential at a single energy.
pub fn transmission_plane_wave(params: &PotentialParams, mass: f64, energy: f64, config: &SolverConfig) -> Result<f64> {
    TransferMatrixSolver::for_gws(params, mass, config)?.transmission(energy)
}

/// Anything that yields T at the energy ħ²k²/(2m) of a wave number k.
///
/// Implementations must be even in k; integrals over k ∈ ℝ rely on it.
pub trait TransmissionModel {
    /// Reduced mass in MeV/c².
    fn reduced_mass(&self) -> f64;

    fn transmission_at_wavenumber(&self, k: f64) -> Result<f64>;
}

/// A transfer-matrix solver plus a memo table of T keyed by |k|.
///
/// All k-space integrals in this crate sample wave numbers on a shared
/// power-of-two lattice, so repeated packet or thermal averages mostly hit
/// the table.
#[derive(Debug)]
pub struct TransmissionKernel {
    solver: TransferMatrixSolver,
    cache: Mutex<HashMap<u64, f64>>,
}

impl TransmissionKernel {
    pub fn new(params: &PotentialParams, mass: f64, config: &SolverConfig) -> Result<Self> {
        Ok(Self::from_solver(TransferMatrixSolver::for_gws(params, mass, config)?))
    }

    pub fn from_solver(solver: TransferMatrixSolver) -> Self {
        Self {
            solver,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn solver(&self) -> &TransferMatrixSolver {
        &self.solver
    }

    /// Direct (uncached) T at an energy.
    pub fn transmission(&self, energy: f64) -> Result<f64> {
        self.solver.transmission(energy)
    }

    /// Number of distinct wave numbers solved so far.
    pub fn cached_evaluations(&self) -> usize {
        self.cache.lock().map(|c| c.len()).unwrap_or(0)
    }
}

impl TransmissionModel for TransmissionKernel {
    fn reduced_mass(&self) -> f64 {
        self.solver.mass
    }

    fn transmission_at_wavenumber(&self, k: f64) -> Result<f64> {
        let k = k.abs();
        let key = k.to_bits();
        if let Some(&t) = self.cache.lock().expect("transmission cache poisoned").get(&key) {
            return Ok(t);
        }
        let t = self.solver.transmission(kinetic_energy(k, self.solver.mass))?;
        self.cache.lock().expect("transmission cache poisoned").insert(key, t);
        Ok(t)
    }
}

/// A closed-form T(E), for testing the averaging machinery against known integrals.
#[derive(Debug, Clone)]
pub struct AnalyticTransmission<F> {
    mass: f64,
    t_of_energy: F,
}

impl<F: Fn(f64) -> f64> AnalyticTransmission<F> {
    pub fn new(mass: f64, t_of_energy: F) -> Self {
        Self { mass, t_of_energy }
    }
}

impl<F: Fn(f64) -> f64> TransmissionModel for AnalyticTransmission<F> {
    fn reduced_mass(&self) -> f64 {
        self.mass
    }

    fn transmission_at_wavenumber(&self, k: f64) -> Result<f64> {
        Ok((self.t_of_energy)(kinetic_energy(k, self.mass)))
    }
}

/// Tabulated T(E).
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionCurve {
    pub energies: Vec<f64>,
    pub t_values: Vec<f64>,
    pub mass: f64,
    /// Worst relative convergence estimate over the grid.
    pub convergence_estimate: f64,
}

pub(crate) fn check_grid(name: &'static str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid(name, "grid is empty"));
    }
    if grid.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
        return Err(Error::invalid(name, "grid values must be positive and finite"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(name, "grid must be strictly increasing"));
    }
    Ok(())
}

impl TransferMatrixSolver {
    pub fn curve(&self, energies: &[f64]) -> Result<TransmissionCurve> {
        check_grid("e_grid", energies)?;
        let mut t_values = Vec::with_capacity(energies.len());
        let mut worst = 0.0f64;
        for &e in energies {
            let s = self.solve(e).map_err(|source| Error::AtEnergy {
                energy: e,
                source: Box::new(source),
            })?;
            worst = worst.max(s.convergence_estimate);
            t_values.push(s.transmission);
        }
        Ok(TransmissionCurve {
            energies: energies.to_vec(),
            t_values,
            mass: self.mass,
            convergence_estimate: worst,
        })
    }
}

/// T(E) of a GWS potential on a grid of energies.
pub fn transmission_curve(
    params: &PotentialParams,
    mass: f64,
    energies: &[f64],
    config: &SolverConfig,
) -> Result<TransmissionCurve> {
    TransferMatrixSolver::for_gws(params, mass, config)?.curve(energies)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Maximum,
    Minimum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub energy: f64,
    pub transmission: f64,
    pub kind: ExtremumKind,
}

/// Minimum relative swing between neighbouring extrema for them to count.
pub const DEFAULT_PROMINENCE: f64 = 1e-4;

/// Interior extrema of a transmission curve at [`DEFAULT_PROMINENCE`].
///
/// The curve must be sampled densely enough that three consecutive points
/// bracket every extremum of interest.
pub fn detect_resonances(curve: &TransmissionCurve) -> Vec<Extremum> {
    find_extrema(&curve.energies, &curve.t_values, DEFAULT_PROMINENCE)
}

/// Three-point local extrema of `values`, pruned so that every surviving
/// extremum differs from its neighbours (other extrema or the curve ends) by
/// at least `prominence` relative to the larger value. The weakest pair is
/// removed first, which keeps maxima and minima alternating.
pub fn find_extrema(abscissae: &[f64], values: &[f64], prominence: f64) -> Vec<Extremum> {
    assert_eq!(abscissae.len(), values.len());
    let n = values.len();
    if n < 3 {
        return Vec::new();
    }

    // (index, Some(kind)) for extrema, None for the two curve ends
    let mut seq: Vec<(usize, Option<ExtremumKind>)> = vec![(0, None)];
    for i in 1..n - 1 {
        let (l, c, r) = (values[i - 1], values[i], values[i + 1]);
        if c > l && c >= r {
            seq.push((i, Some(ExtremumKind::Maximum)));
        } else if c < l && c <= r {
            seq.push((i, Some(ExtremumKind::Minimum)));
        }
    }
    seq.push((n - 1, None));

    let swing = |a: usize, b: usize| {
        let (x, y) = (values[a], values[b]);
        let top = x.abs().max(y.abs());
        if top == 0.0 {
            0.0
        } else {
            (x - y).abs() / top
        }
    };

    while seq.len() > 2 {
        let mut weakest: Option<(usize, f64)> = None;
        for j in 0..seq.len() - 1 {
            let s = swing(seq[j].0, seq[j + 1].0);
            if weakest.is_none_or(|(_, w)| s < w) {
                weakest = Some((j, s));
            }
        }
        let (j, s) = weakest.expect("at least one pair");
        if s >= prominence {
            break;
        }
        match (seq[j].1, seq[j + 1].1) {
            (Some(_), Some(_)) => {
                seq.drain(j..j + 2);
            }
            (Some(_), None) => {
                seq.remove(j);
            }
            (None, Some(_)) => {
                seq.remove(j + 1);
            }
            (None, None) => break,
        }
    }

    seq.into_iter()
        .filter_map(|(i, kind)| {
            kind.map(|kind| Extremum {
                energy: abscissae[i],
                transmission: values[i],
                kind,
            })
        })
        .collect()
}

/// Largest relative swing between consecutive extrema (0 when fewer than two).
pub fn oscillation_amplitude(extrema: &[Extremum]) -> f64 {
    extrema
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0].transmission, w[1].transmission);
            (a - b).abs() / a.abs().max(b.abs())
        })
        .fold(0.0, f64::max)
}
