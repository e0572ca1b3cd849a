mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Workbench for graph-links, looped interlacement graphs and chord
/// diagrams.
#[derive(Parser, Debug)]
#[command(name = "graphlink", version)]
struct Cli {
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Bounds {
    /// Largest graph an equivalence or realizability search may visit.
    #[arg(long, default_value_t = 12)]
    pub max_vertices: usize,
    /// States a search may expand before giving up.
    #[arg(long, default_value_t = 100_000)]
    pub max_steps: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    ToLooped,
    ToLabeled,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    Knot,
    Link2,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Components, writhe, bracket, genus, parity and minimality.
    Invariants { file: PathBuf },
    /// Lists every applicable move.
    Moves { file: PathBuf },
    /// Applies one move, e.g. `og1 remove v3`, and prints the new file.
    Move {
        file: PathBuf,
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        spec: Vec<String>,
    },
    /// Looks for a chord diagram realizing the graph or an equivalent one.
    Realize {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_chords: usize,
        /// Skip the search over equivalent graphs.
        #[arg(long)]
        representative_only: bool,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Bounded search for a move sequence between two graphs.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Ignore signs and use only the free moves.
        #[arg(long)]
        free: bool,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Converts between graph-knots and looped graphs.
    Chi {
        file: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
    },
    /// The parity bracket of a free graph-knot or two-component link.
    ParityBracket {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: BracketKind,
    },
    /// Intersection graph and surgery circle count of a chord diagram.
    Chords { file: PathBuf },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    let result = match cli.command {
        Command::Invariants { file } => commands::invariants(&file),
        Command::Moves { file } => commands::moves(&file),
        Command::Move { file, spec } => commands::apply_move(&file, &spec.join(" ")),
        Command::Realize {
            file,
            max_chords,
            representative_only,
            bounds,
        } => commands::realize(&file, max_chords, representative_only, bounds),
        Command::Equiv { a, b, free, bounds } => commands::equiv(&a, &b, free, bounds),
        Command::Chi { file, direction } => commands::chi(&file, direction),
        Command::ParityBracket { file, kind } => commands::parity_bracket(&file, kind),
        Command::Chords { file } => commands::chords(&file),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
