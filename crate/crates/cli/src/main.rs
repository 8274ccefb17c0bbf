//! `g1lab`: spectra, pseudospectra, numerical ranges, G1 checks and
//! spectral decompositions from the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 a demo
//! check failed.

mod commands;
mod demo;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use g1lab::linalg::OperatorNormKind;
use g1lab::{Complex64, Error};

use input::RecipeArgs;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    DemoFailed(usize),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. }
            | Error::SpectrumHit(_)
            | Error::SingularMatrix { .. }
            | Error::Overflow(_)
            | Error::ClusterNotIsolated(_)
            | Error::InvalidContour(_)
            | Error::NonFinite => CliError::Numerical(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Usage(_) => 1,
            Self::Numerical(_) => 2,
            Self::DemoFailed(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "g1lab",
    version,
    about = "Resolvent norms, pseudospectra and the G1 condition for dense complex matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Spectrum clusters and spectral radius (eigenvalues and power limit)
    Spectrum(Common),
    /// Resolvent-norm field on a grid, as CSV, JSON or SVG contours
    Pseudo(Common),
    /// Sampled G1 certification report
    G1check(Common),
    /// Numerical-range polygon and the necessary G1 conditions
    Numrange(Common),
    /// Spectral decomposition into Riesz projections, with defects
    Decompose(Common),
    /// Apply a function through contour quadrature
    Funcalc(FuncalcArgs),
    /// Run a named reproduction scenario, or `all`
    Demo(DemoArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Matrix file (JSON or Matrix Market); `-` reads stdin
    pub input: Option<PathBuf>,
    /// Generator recipe: normal, diagonal, jordan, shift, oblique, nilpotent-algebra
    #[arg(long)]
    pub recipe: Option<String>,
    /// Matrix order for recipes
    #[arg(long)]
    pub order: Option<usize>,
    /// Comma-separated complex values for recipes (e.g. `0,1,2+1i`)
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    /// Real parameter for recipes (oblique: norm is sqrt(1+param^2))
    #[arg(long, allow_hyphen_values = true)]
    pub param: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "2", value_parser = parse_norm)]
    pub norm: OperatorNormKind,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Grid resolution NX NY
    #[arg(long, num_args = 2, value_names = ["NX", "NY"])]
    pub grid: Option<Vec<usize>>,
    /// Grid bounds RE0 RE1 IM0 IM1
    #[arg(long, num_args = 4, allow_negative_numbers = true, value_names = ["RE0", "RE1", "IM0", "IM1"])]
    pub bounds: Option<Vec<f64>>,
    /// Comma-separated ε values
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<f64>,
    /// Quadrature nodes per circle, or directions for the numerical range
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Write the main output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Clone)]
pub struct FuncalcArgs {
    #[command(flatten)]
    pub common: Common,
    /// `exp` or `poly`
    #[arg(long, default_value = "exp")]
    pub function: String,
    /// Ascending polynomial coefficients for `--function poly`
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct DemoArgs {
    /// Scenario name, or `all`
    #[arg(default_value = "all")]
    pub name: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

fn parse_norm(s: &str) -> Result<OperatorNormKind, String> {
    s.parse()
}

impl Common {
    pub fn recipe_args(&self) -> Result<RecipeArgs, CliError> {
        let values = self
            .values
            .as_deref()
            .map(input::parse_complex_list)
            .transpose()
            .map_err(CliError::Usage)?;
        Ok(RecipeArgs {
            recipe: self.recipe.clone(),
            order: self.order,
            values,
            param: self.param,
            seed: self.seed,
        })
    }

    pub fn element(&self) -> Result<g1lab::spectral::AlgebraElement, CliError> {
        input::load_element(self.input.as_deref(), &self.recipe_args()?, self.norm)
    }

    pub fn coefficients(s: &str) -> Result<Vec<Complex64>, CliError> {
        input::parse_complex_list(s).map_err(CliError::Usage)
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("G1LAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("G1LAB_THREADS must be a nonnegative integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Spectrum(c) => commands::spectrum(&c),
        Command::Pseudo(c) => commands::pseudo(&c),
        Command::G1check(c) => commands::g1check(&c),
        Command::Numrange(c) => commands::numrange(&c),
        Command::Decompose(c) => commands::decompose(&c),
        Command::Funcalc(f) => commands::funcalc(&f),
        Command::Demo(d) => demo::run(&d.name),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("error: {m}"),
                CliError::Numerical(m) => eprintln!("numerical failure: {m}"),
                CliError::DemoFailed(n) => eprintln!("{n} demo check(s) failed"),
            }
            ExitCode::from(e.code())
        }
    }
}
