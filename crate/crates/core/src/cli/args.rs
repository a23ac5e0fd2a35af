use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::DEFAULT_SLACK;
use crate::chains::CountMode;
use crate::stats::DEFAULT_ENERGY_THRESHOLD;

#[derive(Debug, Parser)]
#[command(
    name = "dotchain",
    version,
    about = "Count dot-product chains in finite point sets"
)]
pub(super) struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub(super) enum Command {
    /// Generate a construction and emit it as a point-set file.
    Generate(GenerateArgs),
    /// Count chains of a given type.
    Count(CountArgs),
    /// Count chains and list witnesses.
    Enumerate(EnumerateArgs),
    /// Richness, radial alignment, separation and energy of a set.
    Stats(StatsArgs),
    /// Evaluate a bound formula.
    Bounds(BoundsArgs),
    /// Fit growth exponents to a CSV sweep.
    Fit(FitArgs),
    /// Generate a sweep, count, fit and compare with a bound.
    Verify(VerifyArgs),
}

impl Command {
    pub fn output_path(&self) -> Option<&Path> {
        match self {
            Command::Generate(a) => a.output.as_deref(),
            Command::Count(a) => a.output.as_deref(),
            Command::Enumerate(a) => a.output.as_deref(),
            Command::Stats(a) => a.output.as_deref(),
            Command::Bounds(a) => a.output.as_deref(),
            Command::Fit(a) => a.output.as_deref(),
            Command::Verify(a) => a.output.as_deref(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(super) enum ModeArg {
    #[value(alias = "with-repeats")]
    Repeats,
    #[value(alias = "pairwise-distinct")]
    Distinct,
    Both,
}

impl ModeArg {
    pub fn modes(self) -> Vec<CountMode> {
        match self {
            ModeArg::Repeats => vec![CountMode::WithRepeats],
            ModeArg::Distinct => vec![CountMode::PairwiseDistinct],
            ModeArg::Both => vec![CountMode::WithRepeats, CountMode::PairwiseDistinct],
        }
    }
}

#[derive(Debug, Args)]
pub(super) struct FamilyArgs {
    /// Comma-separated targets (lenz3d) or chain type override.
    #[arg(long)]
    pub alphas: Option<String>,
    #[arg(long)]
    pub alpha1: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub denom: u64,
}

#[derive(Debug, Args)]
pub(super) struct GenerateArgs {
    #[arg(long, visible_alias = "family")]
    pub construction: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub(super) struct ChainArgs {
    /// Comma-separated rational targets; defaults to the set's own type.
    #[arg(long)]
    pub alphas: Option<String>,
    #[arg(long)]
    pub allow_zero: bool,
}

#[derive(Debug, Args)]
pub(super) struct CountArgs {
    #[arg(long)]
    pub set: PathBuf,
    #[command(flatten)]
    pub chain: ChainArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Repeats)]
    pub mode: ModeArg,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub(super) struct EnumerateArgs {
    #[arg(long)]
    pub set: PathBuf,
    #[command(flatten)]
    pub chain: ChainArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Repeats)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 10)]
    pub limit: usize,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub(super) struct StatsArgs {
    #[arg(long)]
    pub set: PathBuf,
    /// Energy exponents; repeatable or comma-separated.
    #[arg(long)]
    pub s: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_ENERGY_THRESHOLD.to_string())]
    pub energy_threshold: String,
    #[arg(long, value_parser = parse_flat_dim)]
    pub flat_dim: Option<usize>,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub(super) struct BoundsArgs {
    #[arg(long)]
    pub bound: String,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub s: Option<String>,
    #[arg(long)]
    pub eps: Option<String>,
    /// Take n, d and missing t, r from this set.
    #[arg(long)]
    pub set: Option<PathBuf>,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub(super) struct FitArgs {
    /// CSV with an `n` column and one or more count columns.
    pub input: PathBuf,
    #[arg(long)]
    pub csv: bool,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub(super) struct VerifyArgs {
    #[arg(long, visible_alias = "construction")]
    pub family: String,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub sweep: String,
    #[command(flatten)]
    pub family_args: FamilyArgs,
    #[arg(long)]
    pub allow_zero: bool,
    /// Count chains of the most frequent nonzero dot product instead of the
    /// family's own type.
    #[arg(long, conflicts_with = "alphas")]
    pub surrogate: bool,
    #[arg(long)]
    pub bound: Option<String>,
    #[arg(long, default_value = "upper")]
    pub direction: String,
    #[arg(long, default_value_t = DEFAULT_SLACK.to_string())]
    pub slack: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub s: Option<String>,
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub csv: bool,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

fn parse_flat_dim(s: &str) -> Result<usize, String> {
    match s {
        "1" => Ok(1),
        "2" => Ok(2),
        _ => Err(format!("expected 1 or 2, got {s:?}")),
    }
}
