use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gws_fusion_cli::{run, CliError, Command, MassSpec, Result, RunConfig};

/// Tunneling, packet-averaged transmission and thermal fusion reactivity
/// for a Generalized Woods-Saxon barrier, written as CSV.
#[derive(Debug, Parser)]
#[command(name = "gws-fusion", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Cmd>,

    /// Flat `key = value` configuration file; flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Print the resolved configuration and exit.
    #[arg(long, global = true)]
    dump_config: bool,

    /// Well depth V0 in MeV.
    #[arg(long, global = true, allow_negative_numbers = true)]
    v0: Option<f64>,
    /// Barrier strength W0 in MeV.
    #[arg(long, global = true, allow_negative_numbers = true)]
    w0: Option<f64>,
    /// Inverse diffuseness a in 1/fm.
    #[arg(long, global = true, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Radius L in fm.
    #[arg(long, global = true, allow_negative_numbers = true)]
    l: Option<f64>,
    /// Reduced mass in a.m.u.
    #[arg(long, global = true, allow_negative_numbers = true, conflicts_with = "masses_amu")]
    mass_amu: Option<f64>,
    /// Two nucleus masses in a.m.u.
    #[arg(long, global = true, num_args = 2, value_names = ["M_A", "M_B"], allow_negative_numbers = true)]
    masses_amu: Option<Vec<f64>>,
    /// Comma-separated temperatures in keV.
    #[arg(long, global = true, value_name = "LIST", allow_hyphen_values = true)]
    temps_kev: Option<String>,
    /// Comma-separated widths in fm; `plane` and `thermal` are also accepted.
    #[arg(long, global = true, value_name = "LIST", allow_hyphen_values = true)]
    xis_fm: Option<String>,
    /// Energy grid in MeV as lo:hi:n:log|lin.
    #[arg(long, global = true, value_name = "GRID")]
    e_grid: Option<String>,
    /// ξ grid in fm as lo:hi:n:log|lin (its ends bracket optimize-xi).
    #[arg(long, global = true, value_name = "GRID")]
    xi_grid: Option<String>,
    /// Comma-separated reduced masses (a.m.u.) compared by `ratio`.
    #[arg(long, global = true, value_name = "LIST")]
    ratio_masses_amu: Option<String>,
    /// Half-width of the scattering window in fm.
    #[arg(long, global = true)]
    x_max: Option<f64>,
    /// Slices of the base transfer-matrix grid.
    #[arg(long, global = true)]
    n_slices: Option<usize>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Cmd {
    /// T(E) for plane waves and Gaussian packets.
    Transmission,
    /// Maxwell-Boltzmann reactivity against temperature per ξ mode.
    ReactivityVsT,
    /// Thermal-wavelength over plane-wave reactivity per reduced mass.
    Ratio,
    /// Reactivity against ξ at fixed temperatures.
    XiScan,
    /// ξ maximizing the reactivity at each temperature.
    OptimizeXi,
    /// Barrier height and position, well depth and zero crossing.
    BarrierInfo,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Transmission => Command::Transmission,
            Cmd::ReactivityVsT => Command::ReactivityVsT,
            Cmd::Ratio => Command::Ratio,
            Cmd::XiScan => Command::XiScan,
            Cmd::OptimizeXi => Command::OptimizeXi,
            Cmd::BarrierInfo => Command::BarrierInfo,
        }
    }
}

fn read_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    RunConfig::from_text(&text)
}

fn resolve(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => read_config(path)?,
        None => RunConfig::default(),
    };
    for (field, value) in [("v0", cli.v0), ("w0", cli.w0), ("a", cli.a), ("l", cli.l)] {
        if let Some(v) = value {
            cfg.set(field, &v.to_string())?;
        }
    }
    if let Some(m) = cli.mass_amu {
        cfg.mass = MassSpec::Reduced(m);
    }
    if let Some(m) = &cli.masses_amu {
        cfg.mass = MassSpec::Pair(m[0], m[1]);
    }
    let lists = [
        ("temps_kev", &cli.temps_kev),
        ("xis_fm", &cli.xis_fm),
        ("e_grid", &cli.e_grid),
        ("xi_grid", &cli.xi_grid),
        ("ratio_masses_amu", &cli.ratio_masses_amu),
    ];
    for (field, value) in lists {
        if let Some(v) = value {
            cfg.set(field, v)?;
        }
    }
    if let Some(x) = cli.x_max {
        cfg.x_max = Some(x);
    }
    if let Some(n) = cli.n_slices {
        cfg.n_slices = n;
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    Ok(cfg)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn main_inner(cli: Cli) -> Result<()> {
    let cfg = resolve(&cli)?;
    if cli.dump_config {
        cfg.validate()?;
        return emit(cfg.out.as_deref(), &cfg.to_text());
    }
    let Some(cmd) = cli.command else {
        return Err(CliError::validation("command", "a subcommand is required (see --help)"));
    };
    let table = run(cmd.into(), &cfg)?;
    emit(cfg.out.as_deref(), &table.to_csv())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match main_inner(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
