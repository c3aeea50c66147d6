//! `heaps` — exact heap-of-pieces combinatorics over a graph read from an
//! edge-list file.
//!
//! Exit codes: 0 success / all identities pass, 1 verification failure,
//! 2 parse error, 3 size-guard violation, 4 invalid heap or rack argument.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use heaps::{Error, ParseError};

#[derive(Parser)]
#[command(
    name = "heaps",
    version,
    about = "Heaps of pieces, racks and chromatic identities over graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Edge-list file: optional `#` comments, first data line `n`, then one
    /// `u v` pair per line (0-based).
    input: std::path::PathBuf,

    /// Emit the machine-readable JSON report instead of text.
    #[arg(long)]
    json: bool,

    /// Total vertex order as a permutation of 0..n-1, smallest first,
    /// e.g. --order "2 0 1".
    #[arg(long)]
    order: Option<String>,

    /// Override the vertex-count size guard.
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Chromatic polynomial assembled from racks of multilinear heaps.
    Chromatic {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Acyclic-orientation count and per-vertex unique-source counts.
    Orientations {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// All racks of a heap, the layer-count histogram, and the involution
    /// pairing.
    Racks {
        #[command(flatten)]
        common: CommonArgs,
        /// Heap word, whitespace-separated vertex ids, e.g. --heap "0 1 3 2 1".
        #[arg(long)]
        heap: String,
    },
    /// One involution step on a rack, reporting the transfer piece.
    Involute {
        #[command(flatten)]
        common: CommonArgs,
        /// Heap word, whitespace-separated vertex ids.
        #[arg(long)]
        heap: String,
        /// Rack layers bottom-to-top separated by `|`, e.g. --rack "0 3 | 1".
        #[arg(long)]
        rack: String,
    },
    /// Chromatic coefficients three ways: Stirling formula, oracle, signed
    /// partition count.
    Coeffs {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the full identity suite; exit 0 iff every identity holds.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Evaluation identities run for lambda in 0..=lambda-max.
        #[arg(long, default_value_t = 4)]
        lambda_max: u64,
        /// Polynomial JSON file ({"coeffs": [a0, ...]}) the chromatic
        /// polynomial must match.
        #[arg(long)]
        expect: Option<std::path::PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(failure) => failure.exit(),
    }
}

/// A command failure with its report text (if any) and exit code.
pub(crate) struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    pub(crate) fn verification(report: String) -> Failure {
        Failure {
            message: report,
            code: 1,
        }
    }

    fn exit(self) -> ExitCode {
        if self.code == 1 {
            // Verification reports go to stdout like successful ones.
            print!("{}", self.message);
        } else {
            eprintln!("error: {}", self.message.trim_end());
        }
        ExitCode::from(self.code)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::Parse(ParseError::MissingVertexCount)
            | Error::Parse(ParseError::MalformedLine { .. })
            | Error::Parse(ParseError::VertexOutOfRange { .. })
            | Error::Parse(ParseError::Loop { .. })
            | Error::Parse(ParseError::DuplicateEdge { .. }) => 2,
            Error::GuardExceeded { .. } => 3,
            Error::InvalidHeap(_)
            | Error::InvalidRack(_)
            | Error::EmptyHeap
            | Error::NotMultilinear
            | Error::VertexOutOfRange { .. } => 4,
            _ => 2,
        };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

impl Failure {
    pub(crate) fn io(path: &std::path::Path, e: std::io::Error) -> Failure {
        Failure {
            message: format!("{}: {e}", path.display()),
            code: 2,
        }
    }

    pub(crate) fn argument(message: String) -> Failure {
        Failure { message, code: 4 }
    }
}
