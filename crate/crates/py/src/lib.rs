//! Python module `gws_fusion`: potential, transmission kernel with packet
//! and thermal averages, and the ξ studies built on them.
//!
//! Invalid input raises `ValueError`; numerical failures raise
//! `gws_fusion.NumericalError`.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fusion::analysis::thermal_dot_overlay;
use fusion::packet::packet_transmission_curve;
use fusion::thermal::{reactivity_vs_temperature, thermal_wavelength_xi, xi_eff as core_xi_eff};
use fusion::transmission::{find_extrema, ExtremumKind, DEFAULT_PROMINENCE};
use fusion::{ThermalSpec, TransmissionModel, XiMode, AMU};

create_exception!(gws_fusion, NumericalError, PyRuntimeError);

fn to_py(e: fusion::Error) -> PyErr {
    if e.is_numerical() {
        NumericalError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

/// GWS potential V = -V0 s + W0 s(1-s), s = 1/(1 + exp(a(|x| - L))).
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct PotentialParams {
    inner: fusion::PotentialParams,
}

#[pymethods]
impl PotentialParams {
    #[new]
    #[pyo3(signature = (v0 = 45.0, w0 = 56.0, a = 0.6, l = 5.0))]
    fn new(v0: f64, w0: f64, a: f64, l: f64) -> PyResult<Self> {
        Ok(Self {
            inner: fusion::PotentialParams::new(v0, w0, a, l).map_err(to_py)?,
        })
    }

    #[getter]
    fn v0(&self) -> f64 {
        self.inner.v0
    }

    #[getter]
    fn w0(&self) -> f64 {
        self.inner.w0
    }

    #[getter]
    fn a(&self) -> f64 {
        self.inner.a
    }

    #[getter]
    fn l(&self) -> f64 {
        self.inner.l
    }

    /// V(x) in MeV.
    fn potential(&self, x: f64) -> f64 {
        self.inner.potential(x)
    }

    /// Barrier height and position, well depth and zero crossing, checked
    /// against a dense scan.
    fn barrier_metrics<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let m = fusion::barrier_metrics(&self.inner).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("barrier_height", m.barrier_height)?;
        d.set_item("barrier_position", m.barrier_position)?;
        d.set_item("well_depth", m.well_depth)?;
        d.set_item("well_zero_crossing", m.well_zero_crossing)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!("PotentialParams(v0={}, w0={}, a={}, l={})", p.v0, p.w0, p.a, p.l)
    }
}

/// A ξ argument: a width in fm, "plane" or "thermal".
fn xi_mode(xi: &Bound<'_, PyAny>) -> PyResult<XiMode> {
    if let Ok(v) = xi.extract::<f64>() {
        return Ok(XiMode::Fixed(v));
    }
    match xi.extract::<String>()?.as_str() {
        "plane" => Ok(XiMode::PlaneWave),
        "thermal" => Ok(XiMode::ThermalWavelength),
        other => Err(PyValueError::new_err(format!(
            "xi must be a width in fm, 'plane' or 'thermal', got {other:?}"
        ))),
    }
}

/// Plane-wave T(E) for one potential and reduced mass, memoized in k, with
/// packet and Maxwell-Boltzmann averages on top.
#[pyclass(frozen)]
struct TransmissionKernel {
    inner: fusion::TransmissionKernel,
}

impl TransmissionKernel {
    fn spec(&self, temperature_kev: f64, xi: &Bound<'_, PyAny>) -> PyResult<ThermalSpec> {
        ThermalSpec::new(temperature_kev, self.inner.reduced_mass(), xi_mode(xi)?).map_err(to_py)
    }
}

#[pymethods]
impl TransmissionKernel {
    #[new]
    #[pyo3(signature = (params = None, mass_amu = 1.0, x_max = None, n_slices = 20_000, refine_factor = 2, convergence_tol = 1e-4))]
    fn new(
        params: Option<PotentialParams>,
        mass_amu: f64,
        x_max: Option<f64>,
        n_slices: usize,
        refine_factor: usize,
        convergence_tol: f64,
    ) -> PyResult<Self> {
        let params = params.map(|p| p.inner).unwrap_or_default();
        let mut cfg = fusion::SolverConfig::for_potential(&params);
        cfg.x_max = x_max.unwrap_or(cfg.x_max);
        cfg.n_slices = n_slices;
        cfg.refine_factor = refine_factor;
        cfg.convergence_tol = convergence_tol;
        let pair = fusion::ParticlePair::from_reduced_amu(mass_amu).map_err(to_py)?;
        let inner = fusion::TransmissionKernel::new(&params, pair.reduced_mass(), &cfg).map_err(to_py)?;
        Ok(Self { inner })
    }

    /// Reduced mass in MeV/c².
    #[getter]
    fn reduced_mass(&self) -> f64 {
        self.inner.reduced_mass()
    }

    /// Plane-wave T at energy `e` (MeV).
    fn transmission(&self, e: f64) -> PyResult<f64> {
        self.inner.transmission(e).map_err(to_py)
    }

    /// Full scattering solution at energy `e`: T, R, flux defect and grid
    /// convergence estimate.
    fn solve<'py>(&self, py: Python<'py>, e: f64) -> PyResult<Bound<'py, PyDict>> {
        let s = self.inner.solver().solve(e).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("energy", s.energy)?;
        d.set_item("transmission", s.transmission)?;
        d.set_item("reflection", s.reflection)?;
        d.set_item("flux_defect", s.flux_defect)?;
        d.set_item("convergence_estimate", s.convergence_estimate)?;
        Ok(d)
    }

    /// Plane-wave T on an increasing energy grid.
    fn curve(&self, energies: Vec<f64>) -> PyResult<Vec<f64>> {
        Ok(self.inner.solver().curve(&energies).map_err(to_py)?.t_values)
    }

    /// Packet-averaged T for width `xi` (fm) and packet energy ħ²K²/(2m).
    fn packet_transmission(&self, xi: f64, e: f64) -> PyResult<f64> {
        let packet = fusion::GaussianPacket::with_energy(xi, e, self.inner.reduced_mass()).map_err(to_py)?;
        Ok(fusion::packet_transmission(&self.inner, &packet).map_err(to_py)?.value)
    }

    fn packet_curve(&self, xi: f64, energies: Vec<f64>) -> PyResult<Vec<f64>> {
        packet_transmission_curve(&self.inner, xi, &energies).map_err(to_py)
    }

    /// Reactivity ⟨σv⟩ in fm²·c; `xi` is a width in fm, "plane" or "thermal".
    #[pyo3(signature = (temperature_kev, xi = None))]
    fn reactivity(&self, temperature_kev: f64, xi: Option<&Bound<'_, PyAny>>) -> PyResult<f64> {
        let spec = match xi {
            Some(xi) => self.spec(temperature_kev, xi)?,
            None => ThermalSpec::new(temperature_kev, self.inner.reduced_mass(), XiMode::PlaneWave).map_err(to_py)?,
        };
        Ok(fusion::reactivity(&self.inner, &spec).map_err(to_py)?.value)
    }

    fn reactivity_curve(&self, temps_kev: Vec<f64>, xi: &Bound<'_, PyAny>) -> PyResult<Vec<f64>> {
        Ok(reactivity_vs_temperature(&self.inner, xi_mode(xi)?, &temps_kev)
            .map_err(to_py)?
            .values())
    }

    /// Thermal-wavelength over plane-wave reactivity per temperature.
    fn enhancement_ratio(&self, temps_kev: Vec<f64>) -> PyResult<Vec<f64>> {
        Ok(fusion::enhancement_ratio(&self.inner, &temps_kev)
            .map_err(to_py)?
            .ratios)
    }

    /// Reactivity per ξ at one temperature; `optimum` is (ξ, ⟨σv⟩) or None
    /// when the best sample is an end of the grid.
    fn xi_scan<'py>(&self, py: Python<'py>, temperature_kev: f64, xis: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
        let s = fusion::xi_scan(&self.inner, temperature_kev, &xis).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("xis", s.xis)?;
        d.set_item("reactivities", s.reactivities)?;
        d.set_item("optimum", s.optimum)?;
        Ok(d)
    }

    /// ξ maximizing the reactivity within [lo, hi]; `location` is
    /// "interior" or the bracket end where the maximum sits.
    #[pyo3(signature = (temperature_kev, lo = 1.0, hi = 1e4))]
    fn optimal_xi<'py>(&self, py: Python<'py>, temperature_kev: f64, lo: f64, hi: f64) -> PyResult<Bound<'py, PyDict>> {
        let o = fusion::optimal_xi(&self.inner, temperature_kev, (lo, hi)).map_err(to_py)?;
        let location = match o.location {
            fusion::optimize::MaximumLocation::Interior => "interior",
            fusion::optimize::MaximumLocation::LowerEndpoint => "lower_endpoint",
            fusion::optimize::MaximumLocation::UpperEndpoint => "upper_endpoint",
        };
        let d = PyDict::new(py);
        d.set_item("xi", o.xi)?;
        d.set_item("reactivity", o.reactivity)?;
        d.set_item("location", location)?;
        Ok(d)
    }

    /// (T, λ/√2, ⟨σv⟩) per temperature.
    fn thermal_dots(&self, temps_kev: Vec<f64>) -> PyResult<Vec<(f64, f64, f64)>> {
        let dots = thermal_dot_overlay(&self.inner, &temps_kev).map_err(to_py)?;
        Ok(dots
            .into_iter()
            .map(|d| (d.temperature_kev, d.xi, d.reactivity))
            .collect())
    }

    /// Distinct T evaluations held in the cache.
    #[getter]
    fn cached_evaluations(&self) -> usize {
        self.inner.cached_evaluations()
    }
}

/// ξ_eff = (1/ξ² + m/(βħ²))^{-1/2} in fm.
#[pyfunction]
#[pyo3(signature = (xi, temperature_kev, mass_amu = 1.0))]
fn xi_eff(xi: f64, temperature_kev: f64, mass_amu: f64) -> PyResult<f64> {
    let spec = ThermalSpec::new(temperature_kev, mass_amu * AMU, XiMode::Fixed(xi)).map_err(to_py)?;
    Ok(core_xi_eff(xi, &spec))
}

/// λ(β)/√2 in fm.
#[pyfunction]
#[pyo3(signature = (temperature_kev, mass_amu = 1.0))]
fn thermal_xi(temperature_kev: f64, mass_amu: f64) -> PyResult<f64> {
    let spec = ThermalSpec::new(temperature_kev, mass_amu * AMU, XiMode::ThermalWavelength).map_err(to_py)?;
    Ok(thermal_wavelength_xi(&spec))
}

/// Local extrema (x, y, "max" | "min") of a sampled curve surviving the
/// prominence filter.
#[pyfunction]
#[pyo3(signature = (x, y, prominence = DEFAULT_PROMINENCE))]
fn detect_resonances(x: Vec<f64>, y: Vec<f64>, prominence: f64) -> PyResult<Vec<(f64, f64, &'static str)>> {
    if x.len() != y.len() {
        return Err(PyValueError::new_err("x and y must have equal length"));
    }
    Ok(find_extrema(&x, &y, prominence)
        .into_iter()
        .map(|e| {
            let kind = match e.kind {
                ExtremumKind::Maximum => "max",
                ExtremumKind::Minimum => "min",
            };
            (e.energy, e.transmission, kind)
        })
        .collect())
}

#[pymodule]
#[pyo3(name = "gws_fusion")]
fn gws_fusion_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PotentialParams>()?;
    m.add_class::<TransmissionKernel>()?;
    m.add_function(wrap_pyfunction!(xi_eff, m)?)?;
    m.add_function(wrap_pyfunction!(thermal_xi, m)?)?;
    m.add_function(wrap_pyfunction!(detect_resonances, m)?)?;
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    m.add("HBAR_C", fusion::HBAR_C)?;
    m.add("AMU", AMU)?;
    Ok(())
}
