#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tridecomp::Delta;

mod commands;
mod output;

/// Fractional triangle decompositions, extremal families, bound audits and
/// grid verification.
#[derive(Parser, Debug)]
#[command(name = "tridecomp", version, about)]
pub struct Cli {
    /// Worker threads for parallel stages.
    #[arg(long, global = true, env = "TRIDECOMP_THREADS")]
    pub threads: Option<usize>,

    /// Suppress progress messages on standard error.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a graph and write it as an edge list.
    Gen(GenArgs),
    /// Construct a fractional triangle decomposition, or report why the flow method fails.
    Decompose(DecomposeArgs),
    /// Evaluate every graph- and cut-level bound on a graph.
    Audit(AuditArgs),
    /// Sweep g - k over a lattice and assemble the gradient certificate.
    GridVerify(GridArgs),
    /// Summarise a graph and the threshold expressions at a given delta.
    Report(ReportArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Complete,
    Barrier,
    Blowup,
    Random,
}

fn parse_delta(s: &str) -> Result<Delta, String> {
    s.parse::<Delta>().map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Order, for `complete` and `random`.
    #[arg(long)]
    pub n: Option<usize>,
    /// Part size, for `barrier` and `blowup`.
    #[arg(long)]
    pub h: Option<usize>,
    /// Minimum-degree deficiency, for `random`.
    #[arg(long, value_parser = parse_delta)]
    pub delta: Option<Delta>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge-list output path.
    #[arg(long)]
    pub out: PathBuf,
    /// JSON summary path (standard output if omitted).
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_delta)]
    pub delta: Delta,
    /// Write triangle weights here as `a b c p/q` lines instead of embedding them in the report.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_delta)]
    pub delta: Delta,
    /// Random cuts per graph, in addition to the structured ones.
    #[arg(long, default_value_t = 100)]
    pub cuts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also audit the flow network's minimum cut when it falls short.
    #[arg(long)]
    pub min_cut: bool,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    /// Lattice spacing.
    #[arg(long)]
    pub h: f64,
    /// Required margin for g - k at every lattice point.
    #[arg(long)]
    pub rho: f64,
    #[arg(long, value_parser = parse_delta, default_value = "0.148")]
    pub delta: Delta,
    /// Box as `a0,a1,t0,t1,m0,m1` (defaults to Xi).
    #[arg(long = "box", value_parser = parse_box)]
    pub bounds: Option<tridecomp::grid::GridBox>,
    /// Number of smallest-diff points kept for the CSV and the spot check.
    #[arg(long, default_value_t = 1000)]
    pub keep: usize,
    /// CSV of the kept points: alpha,tau,mu,case,g,k,diff.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Skip the double-double re-evaluation of the kept points.
    #[arg(long)]
    pub no_spot_check: bool,
    /// Skip gradient maxima, the table comparison and the certificate.
    #[arg(long)]
    pub no_table: bool,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn parse_box(s: &str) -> Result<tridecomp::grid::GridBox, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [a0, a1, t0, t1, m0, m1] => Ok(tridecomp::grid::GridBox { alpha: (a0, a1), tau: (t0, t1), mu: (m0, m1) }),
        _ => Err(format!("expected six comma-separated numbers, got {}", v.len())),
    }
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Optional graph to summarise.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long, value_parser = parse_delta, default_value = "0.148")]
    pub delta: Delta,
    /// n at which the finite-n threshold values are evaluated.
    #[arg(long, default_value_t = 1e4)]
    pub n0: f64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::dispatch(&cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
