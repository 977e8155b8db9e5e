use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod svg;

use commands::{CliError, Output};

/// Exact toric degenerations, Gromov-width bounds and Bott-manifold rigidity.
///
/// Results are printed as JSON on stdout, a one-line summary goes to stderr.
/// Exit codes: 0 success, 2 invalid input, 3 mathematical precondition failed.
#[derive(Parser, Debug)]
#[command(name = "toricdeg", version)]
struct Cli {
    /// Write the result to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Suppress the summary line on stderr.
    #[arg(short, long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    /// Certified maximum over all unimodular matrices with bounded entries.
    Exhaustive,
    /// Seeded hill climbing; a valid lower bound but not certified optimal.
    Heuristic,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertices of a polytope.
    Vertices { polytope: PathBuf },
    /// Lattice points of a polytope.
    LatticePoints { polytope: PathBuf },
    /// Checks that every lattice point of mP is a sum of m lattice points of P.
    NormalCheck {
        polytope: PathBuf,
        /// Highest dilation checked [default: max(2, dim - 1)].
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Checks the Delzant condition at every vertex.
    SmoothCheck { polytope: PathBuf },
    /// Slides the lattice points of a polytope.
    Slide { request: PathBuf },
    /// Builds the graded semigroup of valuation values up to a level.
    Semigroup {
        request: PathBuf,
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Okounkov body approximations conv(level m) / m.
    Okounkov {
        request: PathBuf,
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Searches for a saturation failure of the semigroup.
    Saturation {
        request: PathBuf,
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Minimum nonzero |<λ, α∨>| over the coroots of a classical root system.
    GwFormula {
        /// A, B, C, D or G2.
        #[arg(long)]
        family: String,
        /// Lie rank; for type A the number of coordinates of λ is also accepted.
        #[arg(long)]
        rank: usize,
        /// Comma-separated coordinates, integers or p/q.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Largest simplex Ψ(𝔖ⁿ(a)) + x fitting in a polytope.
    GwSimplex {
        #[arg(long)]
        polytope: PathBuf,
        /// Entry bound for the exhaustive search.
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Seed for the heuristic mode.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random restarts for the heuristic mode.
        #[arg(long, default_value_t = 16)]
        restarts: usize,
    },
    /// Moment polytope of Bott data.
    BottPolytope { bott: PathBuf },
    /// Standard form of ℚ-trivial Bott data, with the moves reaching it.
    BottReduce { bott: PathBuf },
    /// Decides whether two ℚ-trivial Bott manifolds are symplectomorphic.
    BottEquiv { first: PathBuf, second: PathBuf },
    /// Verifies an elementary move by its sliding degeneration.
    BottVerifyMove {
        bott: PathBuf,
        /// Row of the entry being changed (1-based).
        #[arg(long)]
        k: usize,
        /// Column of the entry being changed (1-based).
        #[arg(long)]
        l: usize,
        #[arg(long)]
        max_level: Option<usize>,
        /// Target value of A^k_l; defaults to the normalizing move.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "target")]
        target_entry: Option<i64>,
        /// Explicit target Bott data.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Compares two Hirzebruch surfaces by the closed-form criterion and by
    /// the general decision procedure.
    Hirzebruch { first: PathBuf, second: PathBuf },
    /// SVG of a 2D polytope with its lattice points, or of a slide request
    /// as a before/after pair.
    Render { input: PathBuf },
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    use commands::*;
    match &cli.command {
        Command::Vertices { polytope } => vertices(polytope),
        Command::LatticePoints { polytope } => lattice_points(polytope),
        Command::NormalCheck { polytope, max_level } => normal_check(polytope, *max_level),
        Command::SmoothCheck { polytope } => smooth_check(polytope),
        Command::Slide { request } => slide(request),
        Command::Semigroup { request, max_level } => semigroup(request, *max_level),
        Command::Okounkov { request, max_level } => okounkov(request, *max_level),
        Command::Saturation { request, max_level } => saturation(request, *max_level),
        Command::GwFormula { family, rank, lambda } => gw_formula(family, *rank, lambda),
        Command::GwSimplex { polytope, bound, mode, seed, restarts } => {
            gw_simplex(polytope, *bound, *mode, *seed, *restarts)
        }
        Command::BottPolytope { bott } => bott_polytope(bott),
        Command::BottReduce { bott } => bott_reduce(bott),
        Command::BottEquiv { first, second } => bott_equiv(first, second),
        Command::BottVerifyMove { bott, k, l, max_level, target_entry, target } => {
            bott_verify_move(bott, *k, *l, *max_level, *target_entry, target.as_deref())
        }
        Command::Hirzebruch { first, second } => hirzebruch(first, second),
        Command::Render { input } => render(input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|out| out.emit(cli.output.as_deref(), cli.quiet)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
