//! Run configuration: flat `key = value` text, one entry per line, `#`
//! starts a comment. Command-line flags are applied on top of a parsed file.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use gws_fusion::optimize::log_spaced;
use gws_fusion::{ParticlePair, PotentialParams, SolverConfig, AMU};

use crate::error::{CliError, Result};

/// One requested packet width: a fixed ξ in fm, the plane-wave limit, or
/// the thermal wavelength λ(β)/√2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XiChoice {
    Fixed(f64),
    Plane,
    Thermal,
}

impl FromStr for XiChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "plane" => Ok(XiChoice::Plane),
            "thermal" => Ok(XiChoice::Thermal),
            t => match t.parse::<f64>() {
                Ok(v) if v > 0.0 && v.is_finite() => Ok(XiChoice::Fixed(v)),
                _ => Err(format!("`{t}` is not a positive width, `plane` or `thermal`")),
            },
        }
    }
}

impl fmt::Display for XiChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XiChoice::Fixed(v) => write!(f, "{v}"),
            XiChoice::Plane => f.write_str("plane"),
            XiChoice::Thermal => f.write_str("thermal"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Lin,
}

/// `lo:hi:n:log|lin`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Log => log_spaced(self.lo, self.hi, self.n),
            Spacing::Lin if self.n == 1 => vec![self.lo],
            Spacing::Lin => {
                let step = (self.hi - self.lo) / (self.n - 1) as f64;
                (0..self.n)
                    .map(|i| {
                        if i + 1 == self.n {
                            self.hi
                        } else {
                            self.lo + i as f64 * step
                        }
                    })
                    .collect()
            }
        }
    }

    fn check(&self, field: &str) -> Result<()> {
        if self.n == 0 {
            return Err(CliError::validation(field, "grid is empty"));
        }
        if !(self.lo > 0.0 && self.lo.is_finite() && self.hi.is_finite()) {
            return Err(CliError::validation(field, "bounds must be positive and finite"));
        }
        if self.n > 1 && !(self.hi > self.lo) {
            return Err(CliError::validation(field, "upper bound must exceed lower bound"));
        }
        Ok(())
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.trim().split(':').map(str::trim).collect();
        let [lo, hi, n, spacing] = parts[..] else {
            return Err(format!("`{s}` is not of the form lo:hi:n:log|lin"));
        };
        let num = |t: &str| t.parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
        let spacing = match spacing {
            "log" => Spacing::Log,
            "lin" => Spacing::Lin,
            other => return Err(format!("spacing `{other}` must be log or lin")),
        };
        let n = n.parse::<usize>().map_err(|_| format!("`{n}` is not a point count"))?;
        Ok(Grid {
            lo: num(lo)?,
            hi: num(hi)?,
            n,
            spacing,
        })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spacing = match self.spacing {
            Spacing::Log => "log",
            Spacing::Lin => "lin",
        };
        write!(f, "{}:{}:{}:{spacing}", self.lo, self.hi, self.n)
    }
}

/// Reduced mass given directly, or two nucleus masses; both in a.m.u.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MassSpec {
    Reduced(f64),
    Pair(f64, f64),
}

impl MassSpec {
    fn pair(&self) -> gws_fusion::Result<ParticlePair> {
        match *self {
            MassSpec::Reduced(m) => ParticlePair::from_reduced_amu(m),
            MassSpec::Pair(a, b) => ParticlePair::from_nuclei_amu(a, b),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: PotentialParams,
    pub mass: MassSpec,
    /// Scattering window half-width; `None` means L + 40/a.
    pub x_max: Option<f64>,
    pub n_slices: usize,
    pub refine_factor: usize,
    pub convergence_tol: f64,
    pub v_tail_tol: f64,
    /// Temperatures in keV; `None` selects the command's default grid.
    pub temps_kev: Option<Vec<f64>>,
    /// Packet widths; `None` selects the command's default list.
    pub xis_fm: Option<Vec<XiChoice>>,
    pub e_grid: Grid,
    /// ξ samples for `xi-scan`; its ends bracket `optimize-xi`.
    pub xi_grid: Grid,
    /// Reduced masses (a.m.u.) compared by `ratio`.
    pub ratio_masses_amu: Vec<f64>,
    /// Output CSV path; stdout when absent. Not written by [`RunConfig::to_text`].
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let solver = SolverConfig::with_x_max(1.0);
        Self {
            params: PotentialParams::default(),
            mass: MassSpec::Reduced(1.0),
            x_max: None,
            n_slices: solver.n_slices,
            refine_factor: solver.refine_factor,
            convergence_tol: solver.convergence_tol,
            v_tail_tol: solver.v_tail_tol,
            temps_kev: None,
            xis_fm: None,
            e_grid: Grid {
                lo: 0.01,
                hi: 10.0,
                n: 200,
                spacing: Spacing::Log,
            },
            xi_grid: Grid {
                lo: 1.0,
                hi: 1e4,
                n: 121,
                spacing: Spacing::Log,
            },
            ratio_masses_amu: vec![1.0, 6.0],
            out: None,
        }
    }
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|e| CliError::validation(key, format!("`{s}`: {e}")))
        })
        .collect()
}

fn parse_one<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    value
        .trim()
        .parse::<T>()
        .map_err(|e| CliError::validation(key, format!("`{}`: {e}", value.trim())))
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

impl RunConfig {
    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::validation(format!("line {}", i + 1), "expected `key = value`"))?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    /// Sets one entry from its text form, as in a config file.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "v0" => self.params.v0 = parse_one(key, value)?,
            "w0" => self.params.w0 = parse_one(key, value)?,
            "a" => self.params.a = parse_one(key, value)?,
            "l" => self.params.l = parse_one(key, value)?,
            "mass_amu" => self.mass = MassSpec::Reduced(parse_one(key, value)?),
            "masses_amu" => {
                let m: Vec<f64> = parse_list(key, value)?;
                let [a, b] = m[..] else {
                    return Err(CliError::validation(key, "expected two nucleus masses"));
                };
                self.mass = MassSpec::Pair(a, b);
            }
            "x_max" => self.x_max = Some(parse_one(key, value)?),
            "n_slices" => self.n_slices = parse_one(key, value)?,
            "refine_factor" => self.refine_factor = parse_one(key, value)?,
            "convergence_tol" => self.convergence_tol = parse_one(key, value)?,
            "v_tail_tol" => self.v_tail_tol = parse_one(key, value)?,
            "temps_kev" => self.temps_kev = Some(parse_list(key, value)?),
            "xis_fm" => self.xis_fm = Some(parse_list(key, value)?),
            "e_grid" => self.e_grid = parse_one(key, value)?,
            "xi_grid" => self.xi_grid = parse_one(key, value)?,
            "ratio_masses_amu" => self.ratio_masses_amu = parse_list(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(CliError::validation(other, "unknown configuration key")),
        }
        Ok(())
    }

    /// Config-file text that parses back to this configuration (minus `out`).
    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut lines = vec![
            "# gws-fusion run configuration".to_string(),
            format!("v0 = {}", p.v0),
            format!("w0 = {}", p.w0),
            format!("a = {}", p.a),
            format!("l = {}", p.l),
            match self.mass {
                MassSpec::Reduced(m) => format!("mass_amu = {m}"),
                MassSpec::Pair(a, b) => format!("masses_amu = {a}, {b}"),
            },
        ];
        match self.x_max {
            Some(x) => lines.push(format!("x_max = {x}")),
            None => lines.push("# x_max defaults to l + 40/a".to_string()),
        }
        lines.push(format!("n_slices = {}", self.n_slices));
        lines.push(format!("refine_factor = {}", self.refine_factor));
        lines.push(format!("convergence_tol = {}", self.convergence_tol));
        lines.push(format!("v_tail_tol = {}", self.v_tail_tol));
        match &self.temps_kev {
            Some(t) => lines.push(format!("temps_kev = {}", join(t))),
            None => lines.push("# temps_kev defaults per command".to_string()),
        }
        match &self.xis_fm {
            Some(x) => lines.push(format!("xis_fm = {}", join(x))),
            None => lines.push("# xis_fm defaults per command".to_string()),
        }
        lines.push(format!("e_grid = {}", self.e_grid));
        lines.push(format!("xi_grid = {}", self.xi_grid));
        lines.push(format!("ratio_masses_amu = {}", join(&self.ratio_masses_amu)));
        lines.join("\n") + "\n"
    }

    pub fn pair(&self) -> Result<ParticlePair> {
        self.mass.pair().map_err(|e| match self.mass {
            MassSpec::Reduced(_) => CliError::validation("mass_amu", e.to_string()),
            MassSpec::Pair(..) => CliError::validation("masses_amu", e.to_string()),
        })
    }

    /// Reduced mass in MeV/c².
    pub fn reduced_mass(&self) -> Result<f64> {
        Ok(self.pair()?.reduced_mass())
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            x_max: self.x_max.unwrap_or_else(|| self.params.default_x_max()),
            n_slices: self.n_slices,
            refine_factor: self.refine_factor,
            convergence_tol: self.convergence_tol,
            v_tail_tol: self.v_tail_tol,
        }
    }

    /// Checks everything a command could need, before any computation.
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.pair()?;
        self.solver_config().validate()?;
        if let Some(t) = &self.temps_kev {
            check_increasing("temps_kev", t)?;
        }
        if let Some(x) = &self.xis_fm {
            if x.is_empty() {
                return Err(CliError::validation("xis_fm", "list is empty"));
            }
        }
        self.e_grid.check("e_grid")?;
        self.xi_grid.check("xi_grid")?;
        if self.ratio_masses_amu.is_empty() {
            return Err(CliError::validation("ratio_masses_amu", "list is empty"));
        }
        for &m in &self.ratio_masses_amu {
            ParticlePair::from_reduced_amu(m).map_err(|e| CliError::validation("ratio_masses_amu", e.to_string()))?;
        }
        Ok(())
    }

    /// Parameter echo for the first CSV line.
    pub fn echo(&self, command: &str) -> String {
        let p = &self.params;
        let s = self.solver_config();
        let mass = match self.mass {
            MassSpec::Reduced(m) => format!("mass_amu={m}"),
            MassSpec::Pair(a, b) => format!("masses_amu={a},{b}"),
        };
        let reduced = self.reduced_mass().map(|m| m / AMU).unwrap_or(f64::NAN);
        format!(
            "gws-fusion {command} v0={} w0={} a={} l={} {mass} reduced_mass_amu={reduced} x_max={} n_slices={} refine_factor={} convergence_tol={}",
            p.v0, p.w0, p.a, p.l, s.x_max, s.n_slices, s.refine_factor, s.convergence_tol
        )
    }
}

pub(crate) fn check_increasing(field: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(CliError::validation(field, "list is empty"));
    }
    if values.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(CliError::validation(field, "values must be positive and finite"));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::validation(field, "values must be strictly increasing"));
    }
    Ok(())
}
