//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::grid::{parse_grid, parse_interval, GridSpec, Interval};
use crate::table::Format;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "spiked",
    version,
    about = "Spectra, trial weights and integral equations for the spiked oscillator",
    args_override_self = true,
    allow_negative_numbers = true,
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// key = value file with default flag values; flags given on the command
    /// line take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Lowest Dirichlet eigenvalues of the full potential.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Spectrum(SpectrumArgs),
    /// Small-coupling expansion of one level.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Perturb(PerturbArgs),
    /// Exact level against its expansion over a coupling sweep.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Compare(CompareArgs),
    /// Green function and integral kernel along x for fixed source point.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Kernel(KernelArgs),
    /// Integral equation for the trial weight with a linear term.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Fredholm(FredholmArgs),
    /// Power-substitution coefficients and their expansion remainder.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Transform(TransformArgs),
    /// March the factorized amplitude equation and check it against the radial one.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Factorize(FactorizeArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Perturb(_) => "perturb",
            Command::Compare(_) => "compare",
            Command::Kernel(_) => "kernel",
            Command::Fredholm(_) => "fredholm",
            Command::Transform(_) => "transform",
            Command::Factorize(_) => "factorize",
        }
    }
}

pub const COMMANDS: [&str; 7] = [
    "spectrum",
    "perturb",
    "compare",
    "kernel",
    "fredholm",
    "transform",
    "factorize",
];

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    /// Power of the singular term.
    #[arg(long)]
    pub alpha: f64,
    /// Coupling of the singular term.
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// Strength of the linear term.
    #[arg(long, default_value_t = 0.0)]
    pub kappa: f64,
    /// Angular momentum.
    #[arg(long, default_value_t = 0)]
    pub l: u32,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    /// Number of eigenvalues.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 12.0)]
    pub x_max: f64,
    /// Interior grid points.
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    /// Combine with the refined grid to cancel the leading error.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub extrapolate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum NormalizationArg {
    #[default]
    Half,
    Full,
}

#[derive(Debug, Clone, Args)]
pub struct PerturbArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, conflicts_with = "lambda_grid")]
    pub lambda: Option<f64>,
    #[arg(long, value_parser = parse_grid)]
    pub lambda_grid: Option<GridSpec>,
    /// Odd oscillator index (1 is the ground state).
    #[arg(long, default_value_t = 1)]
    pub state: usize,
    #[arg(long, value_enum, default_value_t = NormalizationArg::Half)]
    pub normalization: NormalizationArg,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, value_parser = parse_grid)]
    pub lambda_grid: GridSpec,
    #[arg(long, default_value_t = 1)]
    pub state: usize,
    #[arg(long, value_enum, default_value_t = NormalizationArg::Half)]
    pub normalization: NormalizationArg,
    #[arg(long, default_value_t = 10.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 200_000)]
    pub n: usize,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub lambda: f64,
    /// Right end of the interval.
    #[arg(long, default_value_t = 10.0)]
    pub b: f64,
    /// Source point.
    #[arg(long)]
    pub xi: f64,
    /// Evaluation points; defaults to 200 points spanning (0, b].
    #[arg(long, value_parser = parse_grid)]
    pub x_grid: Option<GridSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum FredholmMode {
    /// Solution at the quadrature nodes.
    #[default]
    Solve,
    /// Characteristic values of kappa in a range, with solvability defects.
    Characteristic,
    /// Solution at probe points for an increasing sequence of b.
    BLimit,
}

#[derive(Debug, Clone, Args)]
pub struct FredholmArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.0)]
    pub kappa: f64,
    /// Multiple of the homogeneous solution on the right-hand side.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 10.0)]
    pub b: f64,
    /// Quadrature nodes, a multiple of 16; defaults to 12.8 per unit length.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = FredholmMode::Solve)]
    pub mode: FredholmMode,
    /// Search range lo:hi for characteristic values.
    #[arg(long, default_value = "-1:0", value_parser = parse_interval)]
    pub kappa_range: Interval,
    /// Sign-scan points for the characteristic search.
    #[arg(long, default_value_t = 200)]
    pub scan: usize,
    #[arg(long, value_delimiter = ',', default_value = "10,20,40")]
    pub b_schedule: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2")]
    pub probes: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct TransformArgs {
    #[arg(long = "E", visible_alias = "energy")]
    pub energy: f64,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    /// Order of the pole.
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub rho: f64,
    #[arg(long, value_parser = parse_grid)]
    pub eps_grid: GridSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum BranchArg {
    #[default]
    Plus,
    Minus,
}

#[derive(Debug, Clone, Args)]
pub struct FactorizeArgs {
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long)]
    pub k_sq: f64,
    #[arg(long, default_value_t = 0)]
    pub l: u32,
    /// Strength of the singular term.
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub p: f64,
    #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
    pub branch: BranchArg,
    #[arg(long, default_value_t = 0.5)]
    pub r0: f64,
    #[arg(long, default_value_t = 6.0)]
    pub r1: f64,
    #[arg(long, default_value_t = 5500)]
    pub steps: usize,
    /// Amplitude at r0.
    #[arg(long, default_value_t = 1.0)]
    pub a0: f64,
    /// Amplitude slope at r0.
    #[arg(long, default_value_t = 0.0)]
    pub da0: f64,
    /// Interior points at which residuals are reported.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
}
