//! `homlab` command-line front end.
//!
//! Exit codes: 0 success, 2 negative answer (infeasible, no, below
//! threshold, reduction mismatch), 1 error, 3 budget exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "homlab",
    version,
    about = "Weighted and locally constrained graph homomorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance with the main algorithms.
    Solve(SolveArgs),
    /// Solve an instance by exhaustive search.
    Oracle(SolveArgs),
    /// Write the instance produced by a reduction.
    Generate(GenerateArgs),
    /// Check that a reduction preserves the answer, both sides by brute force.
    Verify(GenerateArgs),
    /// Test the common-neighbour property of a target.
    CheckStar {
        /// Target name (`C4`, `Pk:5`, `loop-edge`, ...) or graph file.
        target: String,
    },
    /// Minimum balanced separator by exhaustive search.
    Separator {
        graph: PathBuf,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, default_value = "2/3")]
        beta: String,
    },
    /// Intersection graph of a segment file.
    SegmentsToGraph {
        segments: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Number of vertices on a longest induced path.
    InducedPath {
        graph: PathBuf,
        /// Stop once a path longer than this is found.
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    Whom,
    Lihom,
    Lbhom,
    Lshom,
    Local,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Inj,
    Bij,
    Surj,
}

#[derive(Args)]
struct SolveArgs {
    problem: Problem,
    #[arg(short, long)]
    graph: PathBuf,
    /// Named target such as `K3`, `Pk:5`, `Ck:6`, `coP:4`, `loop-edge`.
    #[arg(long, conflicts_with = "target_file")]
    target: Option<String>,
    #[arg(long)]
    target_file: Option<PathBuf>,
    /// `maxcut`, `oct`, `is`, or a weight file.
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    lists: Option<PathBuf>,
    /// Report whether the optimum reaches this value.
    #[arg(long, allow_hyphen_values = true)]
    threshold: Option<i64>,
    #[arg(long, value_enum)]
    variant: Option<Variant>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Wall-clock cap in milliseconds; HOMLAB_BUDGET_MS takes precedence.
    #[arg(long)]
    time_ms: Option<u64>,
    /// Cap on search steps (nodes for the oracles).
    #[arg(long)]
    steps: Option<u64>,
    /// Print solver counters as comment lines.
    #[arg(long)]
    stats: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Reduction {
    /// Not-all-equal 3-SAT to max-cut.
    NaeMaxcut,
    /// Max-cut to max-bisection.
    Bisection,
    /// Max-bisection to max-cut on segments.
    MaxcutSegments,
    /// Independent set to odd cycle transversal on segments.
    Oct,
    /// Independent set to weighted C4 homomorphisms.
    C4Grid,
    /// 3-SAT to locally surjective maps into a path.
    LshomPath,
    /// 3-SAT to locally surjective maps into a cycle.
    LshomCycle,
    /// 3-SAT to locally surjective maps into the looped pendant edge.
    LshomLoop,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DialectArg {
    #[value(name = "3sat")]
    ThreeSat,
    Posnae3,
}

#[derive(Args)]
struct GenerateArgs {
    kind: Reduction,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    cnf: Option<PathBuf>,
    #[arg(long, value_enum)]
    dialect: Option<DialectArg>,
    /// Threshold parameter, or the path/cycle length for the LSHom kinds.
    #[arg(short)]
    k: Option<usize>,
    /// Make occurrence segments pairwise adjacent (looped pendant kind).
    #[arg(long)]
    occ_clique: bool,
    /// Output prefix; files get `.graph`, `.target`, `.weights`, `.lists`,
    /// `.seg` and `.meta` suffixes.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Node cap for the oracles used by `verify`.
    #[arg(long)]
    steps: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => commands::solve(&a, false),
        Command::Oracle(a) => commands::solve(&a, true),
        Command::Generate(a) => commands::generate(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::CheckStar { target } => commands::check_star(&target),
        Command::Separator { graph, max_size, beta } => commands::separator(&graph, max_size, &beta),
        Command::SegmentsToGraph { segments, output } => commands::segments_to_graph(&segments, output.as_deref()),
        Command::InducedPath { graph, cap } => commands::induced_path(&graph, cap),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.positive { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 3 } else { 1 })
        }
    }
}
