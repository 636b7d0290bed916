//! Command-line front end: data generation, active-subspace estimation,
//! ridge-model fitting, prediction, diagnostics tables, and the quadrature
//! oracle checks.

mod commands;
mod formats;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Errors carrying the process exit code contract: 2 I/O, 3 parse, 4 missing
/// dependency input, 5 dimension mismatch, 6 unsupported request, 1 anything
/// else.
#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, source: std::io::Error },
    Parse(String),
    MissingInput(String),
    Dimensions(String),
    Unsupported(String),
    Other(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn parse(message: String) -> Self {
        Self::Parse(message)
    }

    pub fn missing(message: String) -> Self {
        Self::MissingInput(message)
    }

    pub fn dimensions(message: String) -> Self {
        Self::Dimensions(message)
    }

    pub fn unsupported(message: String) -> Self {
        Self::Unsupported(message)
    }

    pub fn from_core(error: ridgekit::Error) -> Self {
        use ridgekit::Error as E;
        match error {
            E::DimensionMismatch(_) => Self::Dimensions(error.to_string()),
            E::TensorQuadratureInfeasible { .. } => Self::Unsupported(error.to_string()),
            E::NonFinite { .. } => Self::Parse(error.to_string()),
            other => Self::Other(other.to_string()),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Self::Io { .. } => 2,
            Self::Parse(_) => 3,
            Self::MissingInput(_) => 4,
            Self::Dimensions(_) => 5,
            Self::Unsupported(_) => 6,
            Self::Other(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Io { path, source } => write!(f, "{}: {source}", path.display()),
            Self::Parse(msg)
            | Self::MissingInput(msg)
            | Self::Dimensions(msg)
            | Self::Unsupported(msg)
            | Self::Other(msg) => write!(f, "{msg}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "ridgekit",
    version,
    about = "Ridge approximation of expensive functions with active-subspace initialization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded design of experiments as CSV.
    Sample(SampleArgs),
    /// Estimate the active subspace from a gradient CSV.
    Subspace(SubspaceArgs),
    /// Fit a polynomial ridge model by alternating minimization.
    Fit(FitArgs),
    /// Evaluate a fitted model at sample points.
    Predict(PredictArgs),
    /// Average relative pointwise error of a model on labeled data.
    Testerror(TesterrorArgs),
    /// Emit shadow-plot data for a 1- or 2-dimensional model.
    Shadow(ShadowArgs),
    /// Tabulate the quadrature objective over subspace angles (bivariate).
    Sweep(SweepArgs),
    /// Check the near-stationarity bound for a built-in function.
    Checkbound(CheckboundArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleMethod {
    Lhs,
    Gaussian,
}

#[derive(Args)]
struct SampleArgs {
    /// Sampling method.
    #[arg(value_enum)]
    method: SampleMethod,
    /// Number of samples M.
    #[arg(long)]
    count: usize,
    /// Input dimension m.
    #[arg(long)]
    dim: usize,
    /// Scale every coordinate onto LO:HI (Latin hypercube only).
    #[arg(long, value_name = "LO:HI", allow_hyphen_values = true)]
    r#box: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SubspaceArgs {
    /// Gradient CSV with header g1,…,gm.
    #[arg(long)]
    grads: PathBuf,
    /// Bootstrap replicate count.
    #[arg(long, default_value_t = 100)]
    bootstrap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum InitMode {
    /// Leading eigenvectors of an estimated C (needs --spectrum).
    Active,
    /// First n columns of the identity.
    Identity,
    /// Seeded random orthonormal frame.
    Random,
}

impl InitMode {
    fn label(self) -> &'static str {
        match self {
            Self::Active => "active",
            Self::Identity => "identity",
            Self::Random => "random",
        }
    }
}

#[derive(Args)]
struct FitArgs {
    /// Samples CSV with header x1,…,xm,f.
    #[arg(long)]
    samples: PathBuf,
    /// Ridge subspace dimension n.
    #[arg(long)]
    dim: usize,
    /// Total polynomial degree N.
    #[arg(long)]
    degree: usize,
    /// Alternation count P.
    #[arg(long, default_value_t = ridgekit::polyridge::DEFAULT_ITERATIONS)]
    iters: usize,
    /// Steepest-descent step cap per alternation.
    #[arg(long, default_value_t = ridgekit::polyridge::DEFAULT_DESCENT_STEPS)]
    descent_steps: usize,
    #[arg(long, value_enum)]
    init: InitMode,
    /// Spectrum JSON from `subspace` (required for --init active).
    #[arg(long)]
    spectrum: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Model JSON output path.
    #[arg(long)]
    out: PathBuf,
    /// Residual-history CSV path (defaults to <out>.history.csv).
    #[arg(long)]
    history: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    samples: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TesterrorArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    samples: PathBuf,
}

#[derive(Args)]
struct ShadowArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    samples: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    /// Number of evenly spaced angles over [0, π].
    #[arg(long, default_value_t = 101)]
    angles: usize,
    /// Outer tensor-rule order per dimension.
    #[arg(long, default_value_t = 201)]
    quad_outer: usize,
    /// Inner (conditional-mean) rule order.
    #[arg(long, default_value_t = 201)]
    quad_inner: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CheckboundArgs {
    /// Built-in function: bivariate, quadratic, exact_ridge, or padded.
    #[arg(long)]
    function: String,
    /// Active-subspace dimension n.
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Ambient dimension override (0 = the built-in's default).
    #[arg(long, default_value_t = 0)]
    ambient: usize,
    #[arg(long, default_value_t = 101)]
    quad_outer: usize,
    #[arg(long, default_value_t = 101)]
    quad_inner: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = ridgekit::oracle::DEFAULT_FD_STEP)]
    fd_step: f64,
    /// Also write the JSON report here (always printed to stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(args) => commands::sample(args),
        Command::Subspace(args) => commands::subspace(args),
        Command::Fit(args) => commands::fit(args),
        Command::Predict(args) => commands::predict(args),
        Command::Testerror(args) => commands::testerror(args),
        Command::Shadow(args) => commands::shadow(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Checkbound(args) => commands::checkbound(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
