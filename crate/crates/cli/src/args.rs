use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wphodge::{PencilMode, PencilOptions};

#[derive(Debug, Parser)]
#[command(
    name = "wphodge",
    version,
    about = "Jacobian rings and period-map certificates for weighted projective surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full pipeline for a given polynomial.
    Analyze(PolyArgs),
    /// Analyze the Fermat member of the weight system.
    Fermat(FermatArgs),
    /// Non-geodesy certificate only; the polynomial defaults to the Fermat member.
    Certify(PolyArgs),
    /// Scan weight systems and degrees with a Fermat member.
    Search(SearchArgs),
    /// Re-render a certificate or search file.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    /// Four positive weights, e.g. 1,1,2,5.
    #[arg(long, value_delimiter = ',', required = true)]
    pub weights: Vec<u32>,
    #[arg(long)]
    pub degree: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Sampled,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Seed for sampled mode.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl RunArgs {
    pub fn pencil_options(&self) -> PencilOptions {
        match self.mode {
            Mode::Exact => PencilOptions::exact(),
            Mode::Sampled => PencilOptions::sampled(self.seed),
        }
    }

    pub fn mode_name(&self) -> &'static str {
        match self.pencil_options().mode {
            PencilMode::Exact => "exact",
            PencilMode::Sampled => "sampled",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file, written atomically; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record wall-clock time (breaks byte-for-byte reproducibility).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[command(flatten)]
    pub weights: WeightArgs,
    /// Polynomial text such as "x1^10 + x2^10 + x3^5 + x4^2".
    #[arg(long, conflicts_with = "poly_file")]
    pub poly: Option<String>,
    #[arg(long)]
    pub poly_file: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
    /// Include the period-differential matrices.
    #[arg(long)]
    pub include_matrices: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FermatArgs {
    #[command(flatten)]
    pub weights: WeightArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long)]
    pub include_matrices: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Componentwise bounds on nondecreasing weight tuples.
    #[arg(long, value_delimiter = ',', required = true)]
    pub max_weights: Vec<u32>,
    #[arg(long)]
    pub max_degree: u32,
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// A JSON file produced by another command.
    pub input: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}
