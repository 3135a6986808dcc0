//! `dbraid`: centres, normal forms, toric graphs, golden tables and
//! noncommutative-torus parameters from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "dbraid", version, about = "Divisor braid groups on closed surfaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank, invariant factors and order of the centre of a scheme.
    Centre {
        /// Scheme file, JSON or text form.
        scheme: PathBuf,
        #[command(flatten)]
        centre: CentreFlags,
    },
    /// Normal form of a braid word.
    Normalize(NormalizeArgs),
    /// Facet graphs of Delzant polytopes, blow-ups and their centres.
    #[command(subcommand)]
    Toric(ToricCommand),
    /// Recomputes a golden table.
    Tables {
        #[arg(value_enum)]
        which: TableChoice,
        /// Skip the labelling search on mismatch.
        #[arg(long)]
        no_search: bool,
    },
    /// Commutation parameters of the noncommutative tori of each character.
    Nctorus {
        scheme: PathBuf,
        #[arg(long, default_value_t = 1)]
        genus: usize,
        /// Only this character, by index in enumeration order.
        #[arg(long)]
        character: Option<u64>,
    },
    /// Seeded randomized checks.
    Sweep {
        #[arg(value_enum)]
        check: SweepCheck,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Args, Debug, Clone, Default)]
struct CentreFlags {
    /// Compare SNF torsion with the Diophantine route; exit 4 on disagreement.
    #[arg(long)]
    crosscheck: bool,
    /// List torsion characters.
    #[arg(long)]
    characters: bool,
    /// Most characters to list.
    #[arg(long, default_value_t = 100)]
    limit: usize,
}

#[derive(Args, Debug)]
struct NormalizeArgs {
    scheme: PathBuf,
    #[arg(long, default_value_t = 1)]
    genus: usize,
    /// Word such as `a[1,2]^-1 b[1,3]`.
    #[arg(conflicts_with = "file", required_unless_present = "file")]
    word: Option<String>,
    /// File with one word per line.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Also report whether each word equals this one.
    #[arg(long)]
    equal: Option<String>,
}

#[derive(Subcommand, Debug)]
enum ToricCommand {
    /// Facet graph after the given chops; with degrees, the centre too.
    Graph {
        #[command(flatten)]
        polytope: PolytopeArgs,
        /// Degree per colour.
        #[arg(long, num_args = 1..)]
        degrees: Option<Vec<i64>>,
        /// Colour of each facet (default: facet id).
        #[arg(long, num_args = 1..)]
        labelling: Option<Vec<usize>>,
        #[command(flatten)]
        centre: CentreFlags,
    },
    /// Chops one more vertex and prints the resulting polytope.
    Chop {
        #[command(flatten)]
        polytope: PolytopeArgs,
        #[arg(long)]
        vertex: usize,
    },
}

#[derive(Args, Debug)]
struct PolytopeArgs {
    /// Polytope file, or a built-in name such as `square` or `cube`.
    polytope: String,
    /// Vertex to chop first; repeat to compose, ids as after the previous chops.
    #[arg(long = "chop")]
    chops: Vec<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TableChoice {
    Pentagon,
    Tree,
    Fig10,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SweepCheck {
    Rank,
    Torsion,
    DirectSum,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        dbraid_core::par::Execution::Sequential
    } else {
        dbraid_core::par::Execution::default()
    };
    let result = match cli.command {
        Command::Centre { scheme, centre } => commands::centre(&scheme, &centre),
        Command::Normalize(args) => commands::normalize(&args),
        Command::Toric(ToricCommand::Graph {
            polytope,
            degrees,
            labelling,
            centre,
        }) => commands::toric_graph(&polytope, degrees.as_deref(), labelling.as_deref(), &centre),
        Command::Toric(ToricCommand::Chop { polytope, vertex }) => commands::toric_chop(&polytope, vertex),
        Command::Tables { which, no_search } => commands::tables(exec, which, !no_search),
        Command::Nctorus {
            scheme,
            genus,
            character,
        } => commands::nctorus(exec, &scheme, genus, character),
        Command::Sweep { check, seed, count } => commands::sweep(exec, check, seed, count),
    };
    match result {
        Ok(report) => {
            report.print(cli.format);
            ExitCode::from(report.code)
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
