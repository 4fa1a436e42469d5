//! `cohconf`: analyze transitive groups, verify and search for witnesses of
//! the synchronisation hierarchy, and emit the standard constructions.

mod analyze;
mod construct;
mod output;
mod search;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cohconf::hierarchy::Level;

use crate::output::Failure;

#[derive(Parser)]
#[command(name = "cohconf", version, about, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest group enumerated for oracle checks; bigger groups get
    /// identity-only certificates.
    #[arg(long, default_value_t = cohconf::perm::DEFAULT_ENUM_CAP)]
    pub enum_cap: usize,
    /// Directory for output files.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Orbitals, configuration flags, center and isotypic traces as JSON.
    Analyze {
        group: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Record wall-clock times (the report is then no longer byte-stable).
        #[arg(long)]
        timings: bool,
    },
    /// Check a witness exactly. Pair levels take a two-list witness file or
    /// two vector files; `synchronising` takes the meeting set, then blocks.
    Verify {
        group: PathBuf,
        /// qi, spreading, separating or synchronising (a `non-` prefix is accepted).
        #[arg(long, value_parser = parse_level)]
        level: Level,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Look for a nonspreading witness, or probe criticality.
    Search {
        group: PathBuf,
        /// spreading or qi.
        #[arg(long, value_parser = parse_level, default_value = "spreading")]
        level: Level,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        budget: search::BudgetArgs,
        /// Only look for multisets with this sum.
        #[arg(long)]
        target_sum: Option<usize>,
        /// Probe every divisor and report whether all witnesses sum to n.
        #[arg(long)]
        critical: bool,
        /// Number used in the witness file name.
        #[arg(long, default_value_t = 1)]
        id: usize,
    },
    /// Emit group files and geometry for a named construction.
    Construct {
        #[arg(value_enum)]
        name: construct::Name,
        /// Field order for conic-external.
        #[arg(long, default_value_t = 5)]
        q: usize,
        /// Ground set size for two-subsets.
        #[arg(long, default_value_t = 7)]
        n: usize,
        /// Use the alternating instead of the symmetric group for two-subsets.
        #[arg(long)]
        alternating: bool,
        /// Directory for the emitted files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn parse_level(s: &str) -> Result<Level, String> {
    s.trim_start_matches("non-").parse().map_err(|e: cohconf::hierarchy::witness::ParseLevelError| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { group, common, timings } => analyze::run(&group, &common, timings),
        Command::Verify { group, level, files, common } => verify::run(&group, level, &files, &common),
        Command::Search { group, level, common, budget, target_sum, critical, id } => {
            search::run(&group, level, &common, &budget, target_sum, critical, id)
        }
        Command::Construct { name, q, n, alternating, out } => construct::run(name, q, n, alternating, &out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
