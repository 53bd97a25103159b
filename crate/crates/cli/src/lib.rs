//! `morse-entropy` command line.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 a law violation found
//! by `verify`, 3 numeric non-convergence, 4 resource cap exceeded.

pub mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morse_entropy::counter::{mean_distribution_capped, Boundary, CountKind, WindowQuery};
use morse_entropy::laws::{run_suite, Suite, SuiteParams};
use morse_entropy::rate::finite_curve;
use morse_entropy::thermo::laplace_check;
use morse_entropy::{
    betti_curve, epsilon_curve, gibbs, parse_rational, preset, CriticalSpectrum, Curve, Error, DEFAULT_GRID_CAP,
};
use num_rational::Rational64;
use serde_json::json;

use crate::output::{emit_curve, fmt_sig, number, CurveFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "morse-entropy",
    version,
    about = "Critical-point and Betti entropies of product Morse functions"
)]
pub struct Cli {
    /// Largest accepted n*D for exact counting.
    #[arg(long, global = true, env = "MORSE_ENTROPY_CAP", default_value_t = DEFAULT_GRID_CAP)]
    pub cap: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Source {
    /// Built-in spectrum: circle, sphere or torus.
    #[arg(long, conflicts_with = "file")]
    pub preset: Option<String>,
    /// JSON spectrum file: a list of {value, multiplicity, betti_weight}.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

impl Source {
    fn load(&self) -> Result<CriticalSpectrum, CliError> {
        match (&self.preset, &self.file) {
            (Some(name), None) => Ok(preset(name).map_err(Error::from)?),
            (None, Some(path)) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                Ok(CriticalSpectrum::from_json(&text)?)
            }
            _ => Err(CliError::Input("exactly one of --preset or --file is required".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate or print a spectrum.
    Spectrum {
        #[command(subcommand)]
        action: SpectrumAction,
    },
    /// Emit epsilon(c) and/or b(c) on a uniform grid.
    Curve(CurveArgs),
    /// Exact number of critical points or Betti classes in a value window.
    Count(CountArgs),
    /// Run law checks and print their reports.
    Verify(VerifyArgs),
    /// Free energy and Gibbs states, or the Laplace check on the circle.
    Thermo(ThermoArgs),
}

#[derive(Debug, Subcommand)]
pub enum SpectrumAction {
    Validate {
        #[command(flatten)]
        source: Source,
    },
    Dump {
        #[command(flatten)]
        source: Source,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveSelection {
    Epsilon,
    Betti,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub source: Source,
    /// Which entropy curves to emit.
    #[arg(long, value_enum, default_value_t = CurveSelection::Both)]
    pub kind: CurveSelection,
    /// Number of evenly spaced points on [0, 1].
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also emit the finite-size rate at this many sites.
    #[arg(long, requires = "delta")]
    pub finite_n: Option<u64>,
    /// Window half-width for --finite-n, as a rational such as 1/20.
    #[arg(long)]
    pub delta: Option<String>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Critical,
    Betti,
}

impl From<KindArg> for CountKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Critical => CountKind::Critical,
            KindArg::Betti => CountKind::Betti,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryArg {
    ClosedClosed,
    ClosedOpen,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub source: Source,
    /// Number of sites.
    #[arg(long)]
    pub n: u64,
    /// Window centre, e.g. 1/2 or 0.5.
    #[arg(long)]
    pub c: String,
    /// Window half-width, e.g. 1/20.
    #[arg(long)]
    pub delta: String,
    /// Count critical points or Betti classes.
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Defaults to closed-closed for critical counts and closed-open for Betti counts.
    #[arg(long, value_enum)]
    pub boundary: Option<BoundaryArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: Source,
    /// all, domination, superadditivity, fekete, bounds, concavity, duality,
    /// unit-lower-bound, upper-semicontinuity or laplace.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Seed for randomly generated instances.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest n for the Fekete and unit lower bound checks.
    #[arg(long)]
    pub n_max: Option<u64>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ThermoArgs {
    #[command(flatten)]
    pub source: Source,
    /// Comma-separated inverse temperatures.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Option<Vec<f64>>,
    /// Report the Laplace check for the circle height function instead.
    #[arg(long)]
    pub laplace: bool,
    #[arg(long, default_value_t = 256)]
    pub quadrature_points: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::NonConvergence { .. }) => EXIT_NONCONVERGENCE,
            CliError::Core(Error::ResourceCap { .. }) => EXIT_CAP,
            _ => EXIT_INPUT,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

fn rational_arg(name: &str, text: &str) -> Result<Rational64, CliError> {
    parse_rational(text).map_err(|e| CliError::Input(format!("--{name}: {e}")))
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn deliver(bytes: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes)?,
        None => stdout.write_all(bytes.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Spectrum { action } => match action {
            SpectrumAction::Validate { source } => {
                let spec = source.load()?;
                writeln!(
                    stdout,
                    "valid: atoms={} p={} B={} D={}",
                    spec.atoms().len(),
                    spec.total_multiplicity(),
                    spec.total_betti(),
                    spec.denom()
                )?;
                Ok(EXIT_OK)
            }
            SpectrumAction::Dump { source, out } => {
                let spec = source.load()?;
                deliver(&spec.to_json(), out.as_ref(), stdout)?;
                Ok(EXIT_OK)
            }
        },
        Command::Curve(args) => curve(cli, args, stdout),
        Command::Count(args) => {
            let spec = args.source.load()?;
            let kind = CountKind::from(args.kind);
            let boundary = match args.boundary {
                Some(BoundaryArg::ClosedClosed) => Boundary::ClosedClosed,
                Some(BoundaryArg::ClosedOpen) => Boundary::ClosedOpen,
                None => kind.default_boundary(),
            };
            let q = WindowQuery::new(
                rational_arg("c", &args.c)?,
                rational_arg("delta", &args.delta)?,
                boundary,
            )?;
            let dist = mean_distribution_capped(&spec, args.n, kind, cli.cap)?;
            writeln!(stdout, "{}", dist.count_window(&q))?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => verify(args, stdout),
        Command::Thermo(args) => thermo(args, stdout),
    }
}

fn curve(cli: &Cli, args: &CurveArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let spec = args.source.load()?;
    let mut curves: Vec<Curve> = Vec::new();
    if matches!(args.kind, CurveSelection::Epsilon | CurveSelection::Both) {
        curves.push(epsilon_curve(&spec, args.grid)?);
    }
    if matches!(args.kind, CurveSelection::Betti | CurveSelection::Both) {
        curves.push(betti_curve(&spec, args.grid)?);
    }
    if let Some(n) = args.finite_n {
        let delta = rational_arg("delta", args.delta.as_deref().unwrap_or_default())?;
        // Finite-size counts follow the first selected kind.
        let kind = if args.kind == CurveSelection::Betti {
            CountKind::Betti
        } else {
            CountKind::Critical
        };
        curves.push(finite_curve(&spec, n, kind, delta, args.grid, cli.cap)?);
    }
    let format = match args.format {
        Format::Csv => CurveFormat::Csv,
        Format::Json => CurveFormat::Json,
    };
    let log_p = (spec.total_multiplicity() as f64).ln();
    deliver(&emit_curve(&curves, log_p, format)?, args.out.as_ref(), stdout)?;
    if curves.iter().all(Curve::all_converged) {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_NONCONVERGENCE)
    }
}

fn verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let spec = args.source.load()?;
    let suite: Suite = args.suite.parse()?;
    let mut params = SuiteParams::with_seed(args.seed);
    if let Some(n_max) = args.n_max {
        params.fekete_n_max = n_max;
    }
    let reports = run_suite(&spec, suite, &params)?;
    let text = match args.format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&reports).map_err(Error::from)?;
            s.push('\n');
            s
        }
        ReportFormat::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&format!(
                    "{} {}: instances={} strict={} violations={} seed={}\n",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.law,
                    r.instances_checked,
                    r.strict_instances,
                    r.violations.len(),
                    r.seed.map(|s| s.to_string()).unwrap_or_else(|| "-".into()),
                ));
                for note in &r.notes {
                    s.push_str(&format!("  note: {note}\n"));
                }
                for v in &r.violations {
                    s.push_str(&format!("  violation: {} lhs={} rhs={}\n", v.inputs, v.lhs, v.rhs));
                }
            }
            s
        }
    };
    deliver(&text, args.out.as_ref(), stdout)?;
    if reports.iter().all(|r| r.passed) {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_VIOLATION)
    }
}

const DEFAULT_BETAS: [f64; 7] = [0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0];
const LAPLACE_DEFAULT: [f64; 4] = [10.0, 100.0, 1000.0, 10000.0];

fn thermo(args: &ThermoArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    if args.laplace {
        let betas = args.beta.clone().unwrap_or_else(|| LAPLACE_DEFAULT.to_vec());
        let report = laplace_check(&betas, args.quadrature_points)?;
        let text = match args.format {
            Format::Csv => {
                let mut s = String::from("beta,z,g,upper_bound,points,relative_change,in_bounds\n");
                for r in &report.rows {
                    s.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        fmt_sig(r.beta, 12),
                        fmt_sig(r.z, 12),
                        fmt_sig(r.g, 12),
                        fmt_sig(r.upper_bound, 12),
                        r.points,
                        fmt_sig(r.relative_change, 3),
                        r.in_bounds
                    ));
                }
                s
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&report).map_err(Error::from)?;
                s.push('\n');
                s
            }
        };
        deliver(&text, args.out.as_ref(), stdout)?;
        return Ok(if report.passed { EXIT_OK } else { EXIT_VIOLATION });
    }

    let spec = args.source.load()?;
    let betas = args.beta.clone().unwrap_or_else(|| DEFAULT_BETAS.to_vec());
    let states: Vec<_> = betas.iter().map(|&b| gibbs(&spec, b)).collect();
    let text = match args.format {
        Format::Csv => {
            let mut s = String::from("beta,free_energy,mean,p_ground\n");
            for g in &states {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt_sig(g.beta, 12),
                    fmt_sig(g.free_energy, 12),
                    fmt_sig(g.mean, 12),
                    fmt_sig(g.p[0], 12)
                ));
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = states
                .iter()
                .map(|g| {
                    json!({
                        "beta": number(g.beta),
                        "free_energy": number(g.free_energy),
                        "mean": number(g.mean),
                        "p": g.p.iter().map(|&x| number(x)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&rows).map_err(Error::from)?;
            s.push('\n');
            s
        }
    };
    deliver(&text, args.out.as_ref(), stdout)?;
    Ok(EXIT_OK)
}
