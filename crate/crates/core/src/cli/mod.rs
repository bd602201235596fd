//! Command-line front end: configuration loading, dispatch and output.

mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{RunConfig, SweepSpec, SweepVariable};
use crate::error::{Error, Result};
use crate::model::{EnergyVariant, System};
use crate::spectrum::{energy, radial_wavefunction, system_coefficients};
use crate::thermo::{thermo_props, Route, ThermoConfig};
use crate::verify::{self, Report};

pub use output::{format_number, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Ode,
    Aim,
    Quadrature,
    Closedform,
    Identities,
}

#[derive(Debug, Parser)]
#[command(name = "iugehp", version, about = "Spectra and thermo-magnetic properties of the IUGE-HP in 2D")]
pub struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Energy mapping: printed | rescaled.
    #[arg(long, global = true)]
    pub variant: Option<EnergyVariant>,
    /// Partition-function route: sum | quadrature | closed.
    #[arg(long, global = true)]
    pub route: Option<Route>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energies at the four field combinations {0, B} x {0, Phi}.
    Energies {
        /// Comma-separated radial quantum numbers (default run.n_list).
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<u32>>,
        /// Comma-separated magnetic quantum numbers (default run.m_list).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        m: Option<Vec<i32>>,
    },
    /// The energies grid repeated for tau = -1, 0, 1.
    Table {
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        m: Option<Vec<i32>>,
    },
    /// Z, F, U, S, C, M and chi along a sweep.
    Thermo {
        /// Swept variable (overrides run.sweep).
        #[arg(long, value_enum)]
        sweep: Option<SweepArg>,
        /// First sweep value.
        #[arg(long, allow_negative_numbers = true)]
        start: Option<f64>,
        /// Last sweep value.
        #[arg(long, allow_negative_numbers = true)]
        stop: Option<f64>,
        /// Number of sweep points, at least 2.
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Normalized radial function on a uniform grid.
    Wavefunction {
        /// Radial quantum number (default run.n).
        #[arg(long)]
        n: Option<u32>,
        /// Magnetic quantum number (default run.m).
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i32>,
        /// Grid end; by default where the envelope has decayed by e^-40.
        #[arg(long)]
        r_max: Option<f64>,
        /// Number of grid points (default run.points).
        #[arg(long)]
        points: Option<usize>,
    },
    /// Run an oracle comparison; exit 0 iff every tolerance is met.
    Verify {
        #[arg(value_enum)]
        which: Which,
        /// Push the first residual over its tolerance (tests the exit path).
        #[arg(long)]
        inject_breach: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepArg {
    Beta,
    Bfield,
    Abflux,
    Tau,
}

impl From<SweepArg> for SweepVariable {
    fn from(s: SweepArg) -> Self {
        match s {
            SweepArg::Beta => SweepVariable::Beta,
            SweepArg::Bfield => SweepVariable::Bfield,
            SweepArg::Abflux => SweepVariable::Abflux,
            SweepArg::Tau => SweepVariable::Tau,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidConfig(_) | Error::InvalidRoute(_) => EXIT_CONFIG,
        _ => EXIT_NUMERIC,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    match execute(&cli, stderr) {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| Error::config(format!("{}: {e}", path.display()))),
                None => stdout.write_all(text.as_bytes()).map_err(|e| Error::config(e.to_string())),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    exit_code(&e)
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn load(cli: &Cli) -> Result<RunConfig> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::config("--config <path> is required for this command"))?;
    let mut cfg = RunConfig::from_path(path)?;
    if let Some(v) = cli.variant {
        cfg.run.variant = v;
    }
    if let Some(r) = cli.route {
        cfg.run.route = r;
    }
    Ok(cfg)
}

fn execute(cli: &Cli, stderr: &mut dyn Write) -> Result<(String, i32)> {
    match &cli.command {
        Command::Energies { n, m } => {
            let cfg = load(cli)?;
            let (ns, ms) = lists(&cfg, n, m)?;
            let table = energies_table(&cfg, &ns, &ms, None)?;
            Ok((table.render(cli.format), EXIT_OK))
        }
        Command::Table { n, m } => {
            let cfg = load(cli)?;
            let (ns, ms) = lists(&cfg, n, m)?;
            let mut table = Table::new(&["tau", "m", "n", "E_b0_phi0", "E_b_phi0", "E_b0_phi", "E_b_phi"]);
            for tau in [-1.0, 0.0, 1.0] {
                let part = energies_table(&cfg, &ns, &ms, Some(tau))?;
                for row in part.rows {
                    let mut cells = vec![output::Cell::Number(tau)];
                    cells.extend(row);
                    table.rows.push(cells);
                }
            }
            Ok((table.render(cli.format), EXIT_OK))
        }
        Command::Thermo {
            sweep,
            start,
            stop,
            steps,
        } => {
            let cfg = load(cli)?;
            let spec = sweep_spec(&cfg, *sweep, *start, *stop, *steps)?;
            thermo_table(&cfg, &spec, cli.format, stderr)
        }
        Command::Wavefunction { n, m, r_max, points } => {
            let cfg = load(cli)?;
            let system = cfg.system()?;
            let n = n.unwrap_or(cfg.run.n);
            let m = m.unwrap_or(cfg.run.m);
            let points = points.unwrap_or(cfg.run.points);
            if points < 2 {
                return Err(Error::config("wavefunction needs at least 2 points"));
            }
            let r_max = match r_max.or(cfg.run.r_max) {
                Some(r) if r > 0.0 => r,
                Some(r) => return Err(Error::config(format!("r_max must be positive, got {r}"))),
                None => default_r_max(&system, n, m)?,
            };
            let grid: Vec<f64> = (0..points).map(|i| r_max * i as f64 / (points - 1) as f64).collect();
            let wf = radial_wavefunction(n, m, &system, &grid)?;
            if wf.beyond_n_max {
                let _ = writeln!(stderr, "warning: n = {n} lies above the bound range for m = {m}");
            }
            let mut table = Table::new(&["r", "R"]);
            for (r, v) in wf.samples {
                table.push_numbers(&[r, v]);
            }
            Ok((table.render(cli.format), EXIT_OK))
        }
        Command::Verify { which, inject_breach } => {
            let systems = match &cli.config {
                Some(_) => vec![load(cli)?.system()?],
                None => crate::fixtures::all_bound(),
            };
            let mut report = match which {
                Which::Ode => verify::verify_ode(&systems)?,
                Which::Aim => verify::verify_aim(&systems)?,
                Which::Quadrature => verify::verify_quadrature(&systems)?,
                Which::Closedform => verify::verify_closedform(&systems)?,
                Which::Identities => verify::verify_identities(&systems)?,
            };
            if *inject_breach {
                if let Some(first) = report.checks.first_mut() {
                    first.residual = 10.0 * first.tolerance + f64::MIN_POSITIVE;
                    first.note.push_str(" [injected breach]");
                }
            }
            let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok((render_report(&report, cli.format), code))
        }
    }
}

fn lists(cfg: &RunConfig, n: &Option<Vec<u32>>, m: &Option<Vec<i32>>) -> Result<(Vec<u32>, Vec<i32>)> {
    let ns = n.clone().unwrap_or_else(|| cfg.run.n_list.clone());
    let ms = m.clone().unwrap_or_else(|| cfg.run.m_list.clone());
    if ns.is_empty() {
        return Err(Error::config("n list is empty"));
    }
    if ms.is_empty() {
        return Err(Error::config("m list is empty"));
    }
    Ok((ns, ms))
}

/// Rows `(m, n, E(0,0), E(B,0), E(0,Φ), E(B,Φ))` with `B`, `Φ` from the config.
pub fn energies_table(cfg: &RunConfig, ns: &[u32], ms: &[i32], tau: Option<f64>) -> Result<Table> {
    let mut system = cfg.system()?;
    if let Some(t) = tau {
        system = system.with_tau(t);
    }
    let (b, phi) = (system.fields.b_field, system.fields.phi_ab);
    let combos = [(0.0, 0.0), (b, 0.0), (0.0, phi), (b, phi)];
    let mut table = Table::new(&["m", "n", "E_b0_phi0", "E_b_phi0", "E_b0_phi", "E_b_phi"]);
    for &m in ms {
        for &n in ns {
            let mut row = vec![output::Cell::Integer(m as i64), output::Cell::Integer(n as i64)];
            for (bb, pp) in combos {
                let s = system.with_fields(bb, pp);
                row.push(match energy(n, m, &s, cfg.run.variant) {
                    Ok(l) => output::Cell::Number(l.energy),
                    Err(e) => output::Cell::Error(e.to_string()),
                });
            }
            table.rows.push(row);
        }
    }
    Ok(table)
}

fn sweep_spec(
    cfg: &RunConfig,
    sweep: Option<SweepArg>,
    start: Option<f64>,
    stop: Option<f64>,
    steps: Option<usize>,
) -> Result<SweepSpec> {
    let base = cfg.run.sweep;
    let variable = sweep
        .map(SweepVariable::from)
        .or(base.map(|s| s.variable))
        .ok_or_else(|| Error::config("thermo needs a sweep (run.sweep or --sweep)"))?;
    let pick = |flag: Option<f64>, from: Option<f64>, what: &str| {
        flag.or(from).ok_or_else(|| Error::config(format!("sweep {what} missing")))
    };
    let spec = SweepSpec {
        variable,
        start: pick(start, base.map(|s| s.start), "start")?,
        stop: pick(stop, base.map(|s| s.stop), "stop")?,
        steps: steps.or(base.map(|s| s.steps)).ok_or_else(|| Error::config("sweep steps missing"))?,
    };
    spec.validate()?;
    Ok(spec)
}

/// One row per sweep point: `sweep, Z, F, U, S, C, M, chi`.
pub fn thermo_rows(cfg: &RunConfig, spec: &SweepSpec) -> Result<Vec<(f64, Result<crate::thermo::ThermoResult>)>> {
    let system = cfg.system()?;
    let mut rows = Vec::new();
    for x in spec.points() {
        let mut s: System = system;
        let mut beta = cfg.run.beta;
        match spec.variable {
            SweepVariable::Beta => beta = x,
            SweepVariable::Bfield => s.fields.b_field = x,
            SweepVariable::Abflux => s.fields.phi_ab = x,
            SweepVariable::Tau => s.potential.tau = x,
        }
        let tc = ThermoConfig {
            variant: cfg.run.variant,
            closed_form: cfg.run.closed_form,
            ..ThermoConfig::new(s, cfg.run.m)
        };
        let r = s.validate().and_then(|_| thermo_props(beta, &tc, cfg.run.route));
        rows.push((x, r));
    }
    Ok(rows)
}

fn thermo_table(cfg: &RunConfig, spec: &SweepSpec, format: Format, stderr: &mut dyn Write) -> Result<(String, i32)> {
    let rows = thermo_rows(cfg, spec)?;
    let mut table = Table::new(&["sweep", "Z", "F", "U", "S", "C", "M", "chi"]);
    for (i, (x, r)) in rows.into_iter().enumerate() {
        match r {
            Ok(t) => {
                if t.one_sided_field {
                    let _ = writeln!(
                        stderr,
                        "warning: row {i} (sweep = {x}): M and chi from one-sided field differences"
                    );
                }
                table.push_numbers(&[x, t.z, t.f, t.u, t.s, t.c, t.m_mag, t.chi]);
            }
            Err(e) => {
                let _ = writeln!(stderr, "warning: row {i} (sweep = {x}): {e}");
                let mut row = vec![output::Cell::Number(x)];
                row.extend((0..7).map(|_| output::Cell::Error(e.to_string())));
                table.rows.push(row);
            }
        }
    }
    Ok((table.render(format), EXIT_OK))
}

fn default_r_max(system: &System, n: u32, m: i32) -> Result<f64> {
    let c = system_coefficients(system, m)?;
    let rho = n as f64 + c.j_tilde;
    let h = (c.g(rho) / 2.0).abs().max(1e-3);
    // h^H = e^{−2wHr} falls to e^{−40}
    Ok(20.0 / (system.potential.screening() * h))
}

fn render_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&serde_json::json!({
                "which": report.which,
                "passed": report.passed(),
                "max_residual": report.max_residual(),
                "checks": report.checks.iter().map(|c| serde_json::json!({
                    "name": c.name,
                    "residual": c.residual,
                    "tolerance": c.tolerance,
                    "passed": c.passed(),
                    "note": c.note,
                })).collect::<Vec<_>>(),
            }))
            .expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            for c in &report.checks {
                s.push_str(&format!(
                    "{} {}: residual {} (tolerance {}) {}\n",
                    if c.passed() { "PASS" } else { "FAIL" },
                    c.name,
                    format_number(c.residual),
                    format_number(c.tolerance),
                    c.note
                ));
            }
            s.push_str(&format!(
                "{} {}: {} checks, max residual {}\n",
                if report.passed() { "PASS" } else { "FAIL" },
                report.which,
                report.checks.len(),
                format_number(report.max_residual())
            ));
            s
        }
    }
}
