//! Command-line front end for the simultaneous-differentiation library:
//! derivative experiments, sample-count sweeps, interpolation benchmarks,
//! error-bound curves, 2D partials, and Vandermonde inspection, all emitted
//! as deterministic CSV.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Errors surfaced to the shell: usage problems exit 2, numerical failures
/// exit 3, each with a one-line diagnostic on stderr.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    fn report(&self) -> ExitCode {
        match self {
            CliError::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            CliError::Numerical(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(3)
            }
        }
    }
}

impl From<vandiff::Error> for CliError {
    fn from(err: vandiff::Error) -> Self {
        CliError::Numerical(err.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "vandiff",
    about = "Simultaneous numerical differentiation: estimators, bounds, and benchmarks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate derivatives at a point, with a forward-difference baseline
    Derivatives(DerivativesArgs),
    /// Sweep sample counts at fixed spacing, recording errors and determinants
    Sweep(SweepArgs),
    /// Benchmark interpolation methods against an oracle or input samples
    Bench(BenchArgs),
    /// Refine a signal with one interpolation method
    Interp(InterpArgs),
    /// Evaluate closed-form error-bound curves against sample count
    Bounds(BoundsArgs),
    /// Estimate 2D mixed partials from an N×N sample grid
    Derivatives2d(Derivatives2dArgs),
    /// Print a stencil's Vandermonde matrix, explicit inverse, and determinant
    Vandermonde(VandermondeArgs),
}

/// Smoothing kernel selector for pyramid-based methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Binomial,
    Mean,
}

impl KernelArg {
    pub fn to_kernel(self) -> vandiff::pyramid::Kernel {
        match self {
            KernelArg::Binomial => vandiff::pyramid::Kernel::Binomial,
            KernelArg::Mean => vandiff::pyramid::Kernel::Mean,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            KernelArg::Binomial => "binomial",
            KernelArg::Mean => "mean",
        }
    }
}

/// Interpolation method selector for `interp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InterpMethod {
    /// Vandermonde-based local Taylor models
    Ddp,
    /// Difference-pyramid variant
    Pyramid,
    /// Natural cubic spline
    Spline,
    /// Piecewise-linear interpolation
    Linear,
}

impl InterpMethod {
    pub fn label(self) -> &'static str {
        match self {
            InterpMethod::Ddp => "ddp",
            InterpMethod::Pyramid => "pyramid",
            InterpMethod::Spline => "spline",
            InterpMethod::Linear => "linear",
        }
    }
}

#[derive(clap::Args)]
pub struct DerivativesArgs {
    /// Built-in function (exp2x, sinsin10, poly:c0,c1,…)
    #[arg(long = "fn", value_name = "NAME")]
    pub function: Option<String>,
    /// Input signal CSV with header x,value (alternative to --fn)
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Comma-separated sample spacings (required with --fn)
    #[arg(long, value_name = "LIST")]
    pub h: Option<String>,
    /// Number of samples per estimate (2..=21)
    #[arg(long = "n-points", value_name = "N")]
    pub n_points: usize,
    /// Orders to report: a..b (inclusive) or comma list; default 0..n_points-1
    #[arg(long, value_name = "SPEC")]
    pub orders: Option<String>,
    /// Expansion center (default 0; only with --fn)
    #[arg(long, value_name = "X0", allow_negative_numbers = true)]
    pub x0: Option<f64>,
    /// Report the center sample directly as the order-0 estimate
    #[arg(long = "passthrough-zeroth")]
    pub passthrough_zeroth: bool,
    /// After writing output, verify ddp beats forward-difference for orders ≥ 1
    #[arg(long)]
    pub assert: bool,
    /// Output file (default stdout)
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct SweepArgs {
    /// Built-in function (exp2x, sinsin10, poly:c0,c1,…)
    #[arg(long = "fn", value_name = "NAME")]
    pub function: String,
    /// Fixed sample spacing
    #[arg(long, value_name = "H")]
    pub h: f64,
    /// Orders to report: a..b (inclusive) or comma list
    #[arg(long, value_name = "SPEC", default_value = "0..4")]
    pub orders: String,
    /// Largest sample count; the sweep covers odd counts 3..=max-points
    #[arg(long = "max-points", value_name = "N", default_value_t = 21)]
    pub max_points: usize,
    /// Expansion center
    #[arg(long, value_name = "X0", default_value_t = 0.0, allow_negative_numbers = true)]
    pub x0: f64,
    /// Report the center sample directly as the order-0 estimate
    #[arg(long = "passthrough-zeroth")]
    pub passthrough_zeroth: bool,
    /// After writing output, verify the falling-then-rising error and shrinking determinant
    #[arg(long)]
    pub assert: bool,
    /// Output file (default stdout)
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct BenchArgs {
    /// Built-in function (exp2x, sinsin10, poly:c0,c1,…)
    #[arg(long = "fn", value_name = "NAME")]
    pub function: Option<String>,
    /// Input signal CSV with header x,value (alternative to --fn)
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Comma-separated sample spacings (required with --fn)
    #[arg(long, value_name = "LIST")]
    pub h: Option<String>,
    /// Window size for the ddp methods (odd)
    #[arg(long = "n-points", value_name = "N", default_value_t = 5)]
    pub n_points: usize,
    /// Grid-refinement factor
    #[arg(long, value_name = "F", default_value_t = 4)]
    pub factor: usize,
    /// Pyramid depth for ddp-pyramid
    #[arg(long, value_name = "M", default_value_t = 2)]
    pub levels: usize,
    /// Pyramid smoothing kernel
    #[arg(long, value_enum, default_value_t = KernelArg::Binomial)]
    pub kernel: KernelArg,
    /// Comma-separated method filter (default: all four methods)
    #[arg(long, value_name = "LIST")]
    pub method: Option<String>,
    /// After writing output, verify ddp-vanilla < spline < linear at every h
    #[arg(long)]
    pub assert: bool,
    /// Output file (default stdout)
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct InterpArgs {
    /// Built-in function (exp2x, sinsin10, poly:c0,c1,…)
    #[arg(long = "fn", value_name = "NAME")]
    pub function: Option<String>,
    /// Input signal CSV with header x,value (alternative to --fn)
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Sample spacing for the built-in source grid (required with --fn)
    #[arg(long, value_name = "H")]
    pub h: Option<f64>,
    /// Interpolation method
    #[arg(long, value_enum, default_value_t = InterpMethod::Ddp)]
    pub method: InterpMethod,
    /// Grid-refinement factor
    #[arg(long, value_name = "F", default_value_t = 4)]
    pub factor: usize,
    /// Window size for the ddp methods (odd)
    #[arg(long = "n-points", value_name = "N", default_value_t = 5)]
    pub n_points: usize,
    /// Pyramid depth (method pyramid only)
    #[arg(long, value_name = "M", default_value_t = 2)]
    pub levels: usize,
    /// Pyramid smoothing kernel
    #[arg(long, value_enum, default_value_t = KernelArg::Binomial)]
    pub kernel: KernelArg,
    /// Output file (default stdout)
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct BoundsArgs {
    /// Sample spacing the bounds are evaluated at
    #[arg(long, value_name = "H")]
    pub h: f64,
    /// Derivative orders and/or `repr` for the representation bound
    #[arg(long, value_name = "SPEC", default_value = "1,2,3,4,repr")]
    pub orders: String,
    /// Largest sample count; curves cover odd counts 3..=max-points
    #[arg(long = "max-points", value_name = "N", default_value_t = 35)]
    pub max_points: usize,
    /// Output file (default stdout)
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct Derivatives2dArgs {
    /// Built-in bivariate function (xy-2d, expxy-2d)
    #[arg(long = "fn", value_name = "NAME")]
    pub function: Option<String>,
    /// Input grid CSV with header x,y,value (alternative to --fn)
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Grid side length N (default 3; inferred from --input row count)
    #[arg(long, value_name = "N")]
    pub side: Option<usize>,
    /// Grid spacing (required with --fn)
    #[arg(long, value_name = "H")]
    pub h: Option<f64>,
    /// Center x-coordinate (only with --fn)
    #[arg(long, value_name = "X0", default_value_t = 0.0, allow_negative_numbers = true)]
    pub x0: f64,
    /// Center y-coordinate (only with --fn)
    #[arg(long, value_name = "Y0", default_value_t = 0.0, allow_negative_numbers = true)]
    pub y0: f64,
    /// Output file (default stdout)
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct VandermondeArgs {
    /// Comma-separated ascending offsets
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub offsets: Option<String>,
    /// Equidistant spacing (with --n-points, alternative to --offsets)
    #[arg(long, value_name = "H")]
    pub h: Option<f64>,
    /// Number of equidistant offsets (with --h)
    #[arg(long = "n-points", value_name = "N")]
    pub n_points: Option<usize>,
    /// Output file (default stdout)
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Derivatives(args) => commands::derivatives::run(&args),
        Command::Sweep(args) => commands::sweep::run(&args),
        Command::Bench(args) => commands::bench::run(&args),
        Command::Interp(args) => commands::interp::run(&args),
        Command::Bounds(args) => commands::bounds::run(&args),
        Command::Derivatives2d(args) => commands::derivatives2d::run(&args),
        Command::Vandermonde(args) => commands::vandermonde::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => err.report(),
    }
}
