//! `stretched-eigenbasis`: solve, sweep and export from the command line.

mod commands;
mod ranges;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stretched_eigenbasis::analysis::{CdRoute, Region};
use stretched_eigenbasis::ExteriorPolicy;

#[derive(Parser, Debug)]
#[command(name = "stretched-eigenbasis", version, about = "Spectral collocation on a stretched sine eigenbasis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one problem and write the solution on an evaluation lattice.
    Solve(SolveArgs),
    /// Error table over lists of n and δ.
    Converge(ConvergeArgs),
    /// Lebesgue constants of the 1D cardinal functions over N and constant speeds k.
    Lebesgue(LebesgueArgs),
    /// Collocation grid after classification and relocation.
    GridDump(GridDumpArgs),
    /// List the built-in problems.
    Catalog(CatalogArgs),
}

/// Which problem to run.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct ProblemSource {
    /// Built-in problem id (see `catalog`).
    #[arg(long)]
    problem: Option<String>,
    /// JSON file defining a user problem.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    #[command(flatten)]
    source: ProblemSource,
    /// Reynolds number of the convection-diffusion test.
    #[arg(long, default_value_t = 10.0)]
    re: f64,
    /// Semi-axis along x of the ellipse domain.
    #[arg(long, default_value_t = 0.9)]
    ellipse_a: f64,
    /// Semi-axis along y of the ellipse domain.
    #[arg(long, default_value_t = 0.6)]
    ellipse_b: f64,
}

#[derive(Args, Debug, Clone)]
pub struct PipelineArgs {
    /// Curve samples used for relocation (default: max(64, 4·perimeter/h)).
    #[arg(long, value_name = "COUNT")]
    curve_samples: Option<usize>,
    /// Treatment of lattice points outside the domain.
    #[arg(long, value_enum, default_value_t = Exterior::Keep)]
    exterior: Exterior,
    /// Points per axis of the error-evaluation lattice.
    #[arg(long, default_value_t = 256)]
    resolution: usize,
    /// Where errors are measured.
    #[arg(long, value_enum, default_value_t = RegionArg::Omega)]
    region: RegionArg,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Grid points and modes per axis.
    #[arg(long)]
    n: usize,
    /// Stretching margin.
    #[arg(long, default_value_t = 2.0)]
    delta: f64,
    /// Lattice CSV (stdout when absent).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Diagnostics JSON (default: the CSV path with a .json extension).
    #[arg(long, value_name = "PATH")]
    diagnostics: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// n values: `10:30:5`, `4:8` or `10,14,18`.
    #[arg(long, value_parser = ranges::parse_usize_list)]
    n: ::std::vec::Vec<usize>,
    /// δ values: `2` or `0.0625,0.25,1,2`.
    #[arg(long, value_parser = ranges::parse_f64_list, default_value = "2")]
    delta: ::std::vec::Vec<f64>,
    /// Measure against a finer solve instead of the exact solution.
    /// Problems without an exact solution default to 40.
    #[arg(long, value_name = "N")]
    reference_n: Option<usize>,
    /// Report CSV (stdout when absent).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Full report with diagnostics as JSON.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LebesgueArgs {
    /// Node counts.
    #[arg(long = "N", value_parser = ranges::parse_usize_list)]
    counts: ::std::vec::Vec<usize>,
    /// Stretching margin.
    #[arg(long, default_value_t = 2.01)]
    delta: f64,
    /// Physical interval length.
    #[arg(long, default_value_t = 1.0)]
    length: f64,
    /// Constant convection speeds; 0 gives the plain sine cardinals.
    #[arg(long, value_parser = ranges::parse_f64_list, default_value = "0")]
    k: ::std::vec::Vec<f64>,
    /// Sample points over the physical interval.
    #[arg(long, default_value_t = 10_000)]
    resolution: usize,
    /// Basis used for k ≠ 0.
    #[arg(long, value_enum, default_value_t = RouteArg::Psi)]
    route: RouteArg,
    /// Table CSV (stdout when absent).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GridDumpArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2.0)]
    delta: f64,
    #[arg(long, value_name = "COUNT")]
    curve_samples: Option<usize>,
    /// Grid CSV (stdout when absent).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    /// Print full entry metadata as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exterior {
    Keep,
    Discard,
}

impl From<Exterior> for ExteriorPolicy {
    fn from(e: Exterior) -> Self {
        match e {
            Exterior::Keep => ExteriorPolicy::Keep,
            Exterior::Discard => ExteriorPolicy::Discard,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionArg {
    Omega,
    Rect,
}

impl From<RegionArg> for Region {
    fn from(r: RegionArg) -> Self {
        match r {
            RegionArg::Omega => Region::Omega,
            RegionArg::Rect => Region::Rect,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteArg {
    Psi,
    DirectRow,
}

impl From<RouteArg> for CdRoute {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Psi => CdRoute::Psi,
            RouteArg::DirectRow => CdRoute::DirectRow,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Converge(a) => commands::converge(a),
        Command::Lebesgue(a) => commands::lebesgue(a),
        Command::GridDump(a) => commands::grid_dump(a),
        Command::Catalog(a) => commands::catalog(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {:#}", e.error);
            ExitCode::from(e.code)
        }
    }
}
