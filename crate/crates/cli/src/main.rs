mod cache;
mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exact computations with modules over KLR algebras.
#[derive(Parser, Debug)]
#[command(name = "klr", version)]
struct Cli {
    /// Corpus file (JSON); repeat to process several families.
    #[arg(long, global = true)]
    corpus: Vec<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the defining relations of every module.
    Check,
    /// Write the convolution product of two modules.
    Conv {
        a: String,
        b: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Renormalized R-matrix of a pair.
    Rmatrix { a: String, b: String },
    /// Verify the socle/head theorem on one pair or on every listed pair.
    Verify {
        m: Option<String>,
        n: Option<String>,
        #[arg(long)]
        all_pairs: bool,
    },
    /// Run every check over the corpus pairs and triples.
    Report,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => {
            if !outcome.output.is_empty() {
                // a closed pipe downstream is not an error of ours
                let _ = writeln!(std::io::stdout().lock(), "{}", outcome.output);
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
