mod commands;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Manakov top: diagram, joint spectrum, fiber components and monodromy.
#[derive(Debug, Parser)]
#[command(name = "manakov", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Symmetry-labelled joint spectrum as CSV, plus a cluster report.
    Spectrum(SpectrumArgs),
    /// Critical values, lines, arc and regions as JSON.
    Classical(ClassicalArgs),
    /// Monodromy matrix of a transported lattice cell.
    Monodromy(MonodromyArgs),
    /// Monte-Carlo fiber component counts.
    Components(ComponentsArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Also write an SVG figure.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 15.0)]
    pub spin: f64,
    /// Keep one irrep only, e.g. A_s or B2_a.
    #[arg(long)]
    pub irrep: Option<String>,
    /// Cluster tolerance; defaults to 1e-3 of the diagram diameter.
    #[arg(long)]
    pub tol: Option<f64>,
    /// (x, y') lattice of the a=2, b=1 case.
    #[arg(long)]
    pub unfolded: bool,
}

#[derive(Debug, Args)]
pub struct ClassicalArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    #[value(alias = "limiting-loop")]
    Limiting,
    #[value(alias = "generic-loop")]
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisChoice {
    Standard,
    #[value(alias = "alternate")]
    Alt,
}

#[derive(Debug, Args)]
pub struct MonodromyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub preset: Preset,
    #[arg(long, default_value_t = 15.0)]
    pub spin: f64,
    /// Initial cell convention for the limiting loop.
    #[arg(long, value_enum, default_value_t = BasisChoice::Standard)]
    pub basis: BasisChoice,
    /// Irrep sublattice for the generic path.
    #[arg(long, default_value = "A_s")]
    pub irrep: String,
}

#[derive(Debug, Args)]
pub struct ComponentsArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 2_000_000)]
    pub samples: usize,
    /// Box half-width as a fraction of the per-axis extent.
    #[arg(long, default_value_t = 0.01)]
    pub delta: f64,
    /// Linking radius as a multiple of the median nearest-neighbour distance.
    #[arg(long, default_value_t = 4.0)]
    pub eps: f64,
    /// Probe point; without it one probe per region is placed automatically.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_hyphen_values = true)]
    pub probe: Option<Vec<f64>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(a) => commands::spectrum(&a),
        Command::Classical(a) => commands::classical(&a),
        Command::Monodromy(a) => commands::monodromy(&a),
        Command::Components(a) => commands::components(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
