mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exit code for usage errors and failed inputs; 0, 1 and 2 are verdicts.
const EXIT_ERROR: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "topofix", version, about = "Verifiers for topological contractions and their fixed points")]
struct Cli {
    /// Evaluate independent obligations on all cores (default: one thread).
    #[arg(long, global = true)]
    parallel: bool,

    /// Iteration bound replacing every default bound.
    #[arg(long, global = true, env = "TOPOFIX_NMAX", value_parser = positive)]
    nmax: Option<usize>,

    /// Seed for generated covers, pairs and samples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Convergence tolerance for numeric iterations.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Catalog contents.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Run one scripted case.
    Verify {
        /// Case id, see `catalog list`.
        case: String,
        #[command(flatten)]
        out: Output,
    },
    /// Contraction checks on user-supplied covers and pairs.
    #[command(subcommand)]
    Contract(ContractCommand),
    /// Attractor of an IFS by iterating the Hutchinson operator from X.
    Attractor {
        /// Comma-separated map ids, e.g. `thm8-f,thm8-g`.
        #[arg(long)]
        ifs: String,
        /// Host space; defaults to the space of the first catalog map.
        #[arg(long)]
        space: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Hausdorff rank of a catalog space.
    Rank {
        #[arg(long)]
        space: String,
        /// Recursion bound for bracket subspaces.
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run every case and write all reports as one JSON array.
    Report {
        #[arg(long)]
        json: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// Spaces, maps and cases.
    List,
}

#[derive(Debug, Subcommand)]
enum ContractCommand {
    /// Closedness, weak and weak+ contraction; optionally topological.
    Check {
        /// Host space; defaults to the space of a catalog map.
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        map: String,
        /// Cover file: one open set per line, covers separated by `---`.
        #[arg(long)]
        covers: PathBuf,
        /// Pair file: two points per line.
        #[arg(long)]
        pairs: PathBuf,
        /// Also check topological contraction (needs symbolic images).
        #[arg(long)]
        topological: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Args)]
struct Output {
    /// Also write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    topofix::cases::parse_nmax(Some(s))
        .map_err(|e| e.to_string())?
        .ok_or_else(|| "missing value".to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
