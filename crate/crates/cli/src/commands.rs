//! The six subcommands, each producing one CSV table.

use gws_fusion::analysis::thermal_dot_overlay;
use gws_fusion::optimize::{log_spaced, MaximumLocation};
use gws_fusion::packet::packet_transmission_curve;
use gws_fusion::thermal::reactivity_vs_temperature;
use gws_fusion::{
    barrier_metrics, enhancement_ratio, optimal_xi, reactivity, xi_scan, ThermalSpec, TransmissionKernel, XiMode, AMU,
};

use crate::config::{check_increasing, RunConfig, XiChoice};
use crate::error::{CliError, Result};
use crate::table::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Transmission,
    ReactivityVsT,
    Ratio,
    XiScan,
    OptimizeXi,
    BarrierInfo,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Transmission => "transmission",
            Command::ReactivityVsT => "reactivity-vs-t",
            Command::Ratio => "ratio",
            Command::XiScan => "xi-scan",
            Command::OptimizeXi => "optimize-xi",
            Command::BarrierInfo => "barrier-info",
        }
    }
}

/// Validates `cfg`, then runs `cmd`.
pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Table> {
    cfg.validate()?;
    match cmd {
        Command::Transmission => transmission(cfg),
        Command::ReactivityVsT => reactivity_table(cfg),
        Command::Ratio => ratio(cfg),
        Command::XiScan => scan(cfg),
        Command::OptimizeXi => optimize(cfg),
        Command::BarrierInfo => barrier_info(cfg),
    }
}

const FIG_TEMPS_KEV: [f64; 4] = [10.0, 20.0, 50.0, 100.0];
const FIG_WIDTHS_FM: [f64; 4] = [2.0, 8.0, 32.0, 128.0];

fn temps_or(cfg: &RunConfig, default: impl FnOnce() -> Vec<f64>) -> Result<Vec<f64>> {
    let temps = cfg.temps_kev.clone().unwrap_or_else(default);
    check_increasing("temps_kev", &temps)?;
    Ok(temps)
}

fn xis_or(cfg: &RunConfig, with_thermal: bool) -> Vec<XiChoice> {
    cfg.xis_fm.clone().unwrap_or_else(|| {
        let mut xis: Vec<XiChoice> = FIG_WIDTHS_FM.iter().map(|&x| XiChoice::Fixed(x)).collect();
        xis.push(XiChoice::Plane);
        if with_thermal {
            xis.push(XiChoice::Thermal);
        }
        xis
    })
}

fn kernel(cfg: &RunConfig, reduced_mass: f64) -> Result<TransmissionKernel> {
    Ok(TransmissionKernel::new(
        &cfg.params,
        reduced_mass,
        &cfg.solver_config(),
    )?)
}

fn xi_label(xi: &XiChoice) -> String {
    match xi {
        XiChoice::Fixed(v) => format!("xi{v}fm"),
        XiChoice::Plane => "plane".into(),
        XiChoice::Thermal => "thermal".into(),
    }
}

fn list(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// T(E) per width; fixed widths are packet averages at packet energy ħ²K²/(2m).
fn transmission(cfg: &RunConfig) -> Result<Table> {
    let xis = xis_or(cfg, false);
    if xis.contains(&XiChoice::Thermal) {
        return Err(CliError::validation(
            "xis_fm",
            "`thermal` needs a temperature; not valid for transmission",
        ));
    }
    let energies = cfg.e_grid.points();
    let model = kernel(cfg, cfg.reduced_mass()?)?;
    let mut columns = Vec::with_capacity(xis.len());
    for xi in &xis {
        columns.push(match xi {
            XiChoice::Fixed(v) => packet_transmission_curve(&model, *v, &energies)?,
            _ => energies
                .iter()
                .map(|&e| model.transmission(e))
                .collect::<gws_fusion::Result<_>>()?,
        });
    }
    let mut header = vec!["E_MeV".to_string()];
    header.extend(xis.iter().map(|x| format!("T_{}", xi_label(x))));
    let echo = format!(
        "{} e_grid={} xis_fm={}",
        cfg.echo("transmission"),
        cfg.e_grid,
        join_xis(&xis)
    );
    let mut table = Table::new(echo, header);
    for (i, &e) in energies.iter().enumerate() {
        let mut row = vec![Cell::Num(e)];
        row.extend(columns.iter().map(|c| Cell::Num(c[i])));
        table.push(row);
    }
    Ok(table)
}

fn join_xis(xis: &[XiChoice]) -> String {
    xis.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn mode(xi: &XiChoice) -> XiMode {
    match *xi {
        XiChoice::Fixed(v) => XiMode::Fixed(v),
        XiChoice::Plane => XiMode::PlaneWave,
        XiChoice::Thermal => XiMode::ThermalWavelength,
    }
}

fn reactivity_table(cfg: &RunConfig) -> Result<Table> {
    let temps = temps_or(cfg, || log_spaced(1.0, 1000.0, 31))?;
    let xis = xis_or(cfg, true);
    let model = kernel(cfg, cfg.reduced_mass()?)?;
    let columns = xis
        .iter()
        .map(|xi| Ok(reactivity_vs_temperature(&model, mode(xi), &temps)?.values()))
        .collect::<Result<Vec<_>>>()?;
    let mut header = vec!["T_keV".to_string()];
    header.extend(xis.iter().map(|x| format!("sigma_v_{}", xi_label(x))));
    let echo = format!(
        "{} temps_kev={} xis_fm={} units: sigma_v in fm^2*c, thermal xi = lambda/sqrt(2) with lambda = hbar*sqrt(2*pi*beta/m)",
        cfg.echo("reactivity-vs-t"),
        list(&temps),
        join_xis(&xis)
    );
    let mut table = Table::new(echo, header);
    for (i, &t) in temps.iter().enumerate() {
        let mut row = vec![Cell::Num(t)];
        row.extend(columns.iter().map(|c| Cell::Num(c[i])));
        table.push(row);
    }
    Ok(table)
}

/// Thermal-wavelength over plane-wave reactivity, one column per reduced mass.
fn ratio(cfg: &RunConfig) -> Result<Table> {
    let temps = temps_or(cfg, || log_spaced(1.0, 5000.0, 40))?;
    let columns = cfg
        .ratio_masses_amu
        .iter()
        .map(|&m| Ok(enhancement_ratio(&kernel(cfg, m * AMU)?, &temps)?.ratios))
        .collect::<Result<Vec<_>>>()?;
    let mut header = vec!["T_keV".to_string()];
    header.extend(cfg.ratio_masses_amu.iter().map(|m| format!("ratio_m{m}amu")));
    let echo = format!(
        "{} temps_kev={} ratio_masses_amu={} ratio = sigma_v(thermal)/sigma_v(plane)",
        cfg.echo("ratio"),
        list(&temps),
        list(&cfg.ratio_masses_amu)
    );
    let mut table = Table::new(echo, header);
    for (i, &t) in temps.iter().enumerate() {
        let mut row = vec![Cell::Num(t)];
        row.extend(columns.iter().map(|c| Cell::Num(c[i])));
        table.push(row);
    }
    Ok(table)
}

fn location_label(loc: MaximumLocation) -> &'static str {
    match loc {
        MaximumLocation::Interior => "interior",
        MaximumLocation::LowerEndpoint => "lower_endpoint",
        MaximumLocation::UpperEndpoint => "upper_endpoint",
    }
}

/// Reactivity against ξ per temperature, with thermal-wavelength dots
/// appended as flagged rows and the refined optimum echoed in the header.
fn scan(cfg: &RunConfig) -> Result<Table> {
    let temps = temps_or(cfg, || FIG_TEMPS_KEV.to_vec())?;
    let xis = cfg.xi_grid.points();
    check_increasing("xi_grid", &xis)?;
    if xis.len() < 3 {
        return Err(CliError::validation("xi_grid", "a scan needs at least 3 widths"));
    }
    let model = kernel(cfg, cfg.reduced_mass()?)?;
    let scans = temps
        .iter()
        .map(|&t| Ok(xi_scan(&model, t, &xis)?))
        .collect::<Result<Vec<_>>>()?;
    let dots = thermal_dot_overlay(&model, &temps)?;
    let bracket = (cfg.xi_grid.lo, cfg.xi_grid.hi);
    let optima = temps
        .iter()
        .map(|&t| {
            let o = optimal_xi(&model, t, bracket)?;
            Ok(format!(
                "T={t}keV xi*={:.6e}fm sigma_v*={:.11e} ({})",
                o.xi,
                o.reactivity,
                location_label(o.location)
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut header = vec!["xi_fm".to_string()];
    header.extend(temps.iter().map(|t| format!("sigma_v_T{t}keV")));
    header.push("marker".into());
    let echo = format!(
        "{} temps_kev={} xi_grid={} units: sigma_v in fm^2*c; optimum: {}",
        cfg.echo("xi-scan"),
        list(&temps),
        cfg.xi_grid,
        optima.join("; ")
    );
    let mut table = Table::new(echo, header);
    for (i, &xi) in xis.iter().enumerate() {
        let mut row = vec![Cell::Num(xi)];
        row.extend(scans.iter().map(|s| Cell::Num(s.reactivities[i])));
        row.push("scan".into());
        table.push(row);
    }
    for (j, dot) in dots.iter().enumerate() {
        let mut row = vec![Cell::Num(dot.xi)];
        row.extend((0..temps.len()).map(|k| if k == j { Cell::Num(dot.reactivity) } else { Cell::Empty }));
        row.push("thermal_dot".into());
        table.push(row);
    }
    Ok(table)
}

fn optimize(cfg: &RunConfig) -> Result<Table> {
    let temps = temps_or(cfg, || FIG_TEMPS_KEV.to_vec())?;
    let bracket = (cfg.xi_grid.lo, cfg.xi_grid.hi);
    if !(bracket.1 > bracket.0) {
        return Err(CliError::validation("xi_grid", "bracket needs hi > lo"));
    }
    let mass = cfg.reduced_mass()?;
    let model = kernel(cfg, mass)?;
    let header = [
        "T_keV",
        "xi_opt_fm",
        "sigma_v_opt",
        "location",
        "xi_thermal_fm",
        "sigma_v_thermal",
        "sigma_v_plane",
    ];
    let echo = format!(
        "{} temps_kev={} xi_bracket_fm={},{} units: sigma_v in fm^2*c",
        cfg.echo("optimize-xi"),
        list(&temps),
        bracket.0,
        bracket.1
    );
    let mut table = Table::new(echo, header.iter().map(|s| s.to_string()).collect());
    for &t in &temps {
        let o = optimal_xi(&model, t, bracket)?;
        let thermal = ThermalSpec::new(t, mass, XiMode::ThermalWavelength)?;
        let th = reactivity(&model, &thermal)?;
        let plane = reactivity(&model, &thermal.with_mode(XiMode::PlaneWave))?;
        table.push(vec![
            t.into(),
            o.xi.into(),
            o.reactivity.into(),
            location_label(o.location).into(),
            gws_fusion::thermal::thermal_wavelength_xi(&thermal).into(),
            th.value.into(),
            plane.value.into(),
        ]);
    }
    Ok(table)
}

fn barrier_info(cfg: &RunConfig) -> Result<Table> {
    let m = barrier_metrics(&cfg.params)?;
    let header = [
        "barrier_height_MeV",
        "barrier_position_fm",
        "well_zero_crossing_fm",
        "well_depth_MeV",
    ];
    let mut table = Table::new(cfg.echo("barrier-info"), header.iter().map(|s| s.to_string()).collect());
    table.push(vec![
        m.barrier_height.into(),
        m.barrier_position.into(),
        m.well_zero_crossing.into(),
        m.well_depth.into(),
    ]);
    Ok(table)
}
