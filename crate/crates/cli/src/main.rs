//! `geodex`: command-line access to the verification, feasibility and
//! search tools for k-geodetic digraphs with excess one.

mod commands;
mod range;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use range::{parse_selection, Selection};

#[derive(Parser, Debug)]
#[command(
    name = "geodex",
    version,
    about = "k-geodetic digraphs with excess one"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    /// Worker threads for scans and searches (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Profile a digraph file against (d, k): order, Moore bound, excess,
    /// diregularity and geodecity.
    Check(CheckArgs),
    /// Extract and classify the outlier function of an excess-one digraph.
    Outlier(OutlierArgs),
    /// List (d, k) with (k+1) | d(M(d,k)+1).
    ScanDiv(ScanArgs),
    /// List (d, k) passing the vertex-transitive divisibility conditions.
    ScanVt(ScanVtArgs),
    /// Conditions forcing a Type II vertex.
    Type2(PairArgs),
    /// The primality-based non-existence test for degree three.
    Degree3(Degree3Args),
    /// Characteristic polynomial of J - P for a cycle type, with the k = 2
    /// spectral test when it applies.
    Spectrum(SpectrumArgs),
    /// Every candidate outlier cycle type for k = 2 with its verdict.
    K2Cases(K2Args),
    /// Exhaustive search for excess-one digraphs.
    Search(SearchArgs),
    /// The directed Moore bound M(d, k).
    Moore(PairArgs),
}

fn selection(s: &str) -> Result<Selection, String> {
    parse_selection(s)
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Digraph file.
    #[arg(short = 'f', long = "file")]
    pub file: PathBuf,
    #[arg(short = 'd', long = "degree")]
    pub d: usize,
    #[arg(short = 'k', long = "horizon")]
    pub k: usize,
}

#[derive(Args, Debug)]
pub struct OutlierArgs {
    #[arg(short = 'f', long = "file")]
    pub file: PathBuf,
    #[arg(short = 'k', long = "horizon")]
    pub k: usize,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Degrees, e.g. `3..12` or `3,5,7`.
    #[arg(short = 'd', long = "degree", value_parser = selection)]
    pub d: Selection,
    /// Horizons, e.g. `2..10000`.
    #[arg(short = 'k', long = "horizon", value_parser = selection)]
    pub k: Selection,
}

#[derive(Args, Debug)]
pub struct ScanVtArgs {
    #[command(flatten)]
    pub scan: ScanArgs,
    /// Test the arc-transitive conditions at this excess (1 ≤ ε ≤ d)
    /// instead.
    #[arg(long = "arc-transitive-excess")]
    pub arc_transitive_excess: Option<u64>,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(short = 'd', long = "degree", value_parser = selection)]
    pub d: Selection,
    #[arg(short = 'k', long = "horizon", value_parser = selection)]
    pub k: Selection,
}

#[derive(Args, Debug)]
pub struct Degree3Args {
    #[arg(short = 'k', long = "horizon", value_parser = selection)]
    pub k: Selection,
    /// Print only the horizons for which non-existence is proved.
    #[arg(long)]
    pub summary: bool,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(short = 'd', long = "degree")]
    pub d: u64,
    #[arg(short = 'k', long = "horizon")]
    pub k: u64,
    /// Cycle type such as `2:1 4:14` or `4:11`.
    #[arg(long = "pv")]
    pub pv: String,
}

#[derive(Args, Debug)]
pub struct K2Args {
    #[arg(short = 'd', long = "degree", value_parser = selection)]
    pub d: Selection,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(short = 'd', long = "degree")]
    pub d: u64,
    #[arg(short = 'k', long = "horizon")]
    pub k: u64,
    /// Search all d-diregular k-geodetic digraphs of this order instead of
    /// order M(d,k)+1.
    #[arg(long)]
    pub order: Option<usize>,
    /// Stop after exploring this many nodes.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Record completed subtree tasks in this file.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Continue from the tasks recorded in the checkpoint.
    #[arg(long, requires = "checkpoint")]
    pub resume: bool,
    /// Run at most this many pending subtree tasks.
    #[arg(long)]
    pub max_tasks: Option<usize>,
    /// Number of vertices assigned before splitting into tasks.
    #[arg(long, default_value_t = 6)]
    pub prefix_depth: usize,
    /// Disable the degree-three common-out-neighbour rule.
    #[arg(long)]
    pub no_common_out_rule: bool,
    /// Disable the equal-out-neighbourhood transposition rule.
    #[arg(long)]
    pub no_transposition_rule: bool,
}

/// Failure classes with their exit codes.
pub enum Failure {
    /// The input data (digraph, checkpoint) is malformed or unsuitable.
    Input(String),
    /// The command line is unusable.
    Usage(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let ctx = commands::Context {
        format: cli.format,
        workers: geodex::par::Workers(cli.workers),
    };
    let result = match cli.command {
        Command::Check(a) => commands::check(&ctx, a),
        Command::Outlier(a) => commands::outlier(&ctx, a),
        Command::ScanDiv(a) => commands::scan_div(&ctx, a),
        Command::ScanVt(a) => commands::scan_vt(&ctx, a),
        Command::Type2(a) => commands::type2(&ctx, a),
        Command::Degree3(a) => commands::degree3(&ctx, a),
        Command::Spectrum(a) => commands::spectrum(&ctx, a),
        Command::K2Cases(a) => commands::k2_cases(&ctx, a),
        Command::Search(a) => commands::search(&ctx, a),
        Command::Moore(a) => commands::moore(&ctx, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
