//! ramforge: ramification invariants of rings of integers, exactly.
//!
//! Subcommands compute prime splitting, classification with chain-level
//! witnesses, Kähler differentials, the inverse different, THH/HH/Ram
//! tables, and the verification suites; output is deterministic JSON
//! (sorted keys) or a human-readable table.

mod output;
mod parse;
mod run;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ramforge_core::Error;

#[derive(Parser)]
#[command(name = "ramforge", version, about = "Exact ramification invariants of rings of integers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Truncation precision override (p-adic digits); the environment
    /// variable RAMFORGE_PRECISION supplies a default.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
pub enum Command {
    /// Factor a rational prime in the order.
    Factor {
        /// Defining polynomial, constant term first (e.g. 1,0,1 for x^2+1).
        #[arg(long, allow_hyphen_values = true)]
        field: String,
        #[arg(long)]
        prime: u64,
    },
    /// Classify ramification at a prime, with derived witnesses.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
        #[arg(long)]
        prime: u64,
    },
    /// Kähler differentials of the order as an abelian group.
    Omega1 {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
    },
    /// The inverse different as a fractional ideal.
    Different {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
    },
    /// Topological Hochschild homology table.
    Thh {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
        #[arg(long, default_value_t = 7)]
        max_degree: i64,
    },
    /// Ordinary Hochschild homology table.
    Hh {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
        #[arg(long, default_value_t = 7)]
        max_degree: i64,
    },
    /// The ramification measure table.
    Ram {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
        #[arg(long, default_value_t = 7)]
        max_degree: i64,
    },
    /// Certify the weak equivalence for an Eisenstein datum.
    #[command(name = "verify-mainlemma")]
    VerifyMainlemma {
        /// Datum as p=..,e=..,g=c0:c1:..,u=.. (g may be omitted for 0).
        #[arg(long, allow_hyphen_values = true)]
        eisenstein: String,
        /// Perturb the chain-level data; the verification must then fail
        /// (exit 3). Test hook.
        #[arg(long)]
        corrupt: bool,
    },
    /// Run both homology pipelines for the differential module.
    #[command(name = "verify-l2")]
    VerifyL2 {
        #[arg(long, allow_hyphen_values = true)]
        eisenstein: String,
    },
    /// Verify the fiber sequence of a tower Z in B in C at a prime.
    #[command(name = "verify-triple")]
    VerifyTriple {
        /// Defining polynomial of the middle field B.
        #[arg(long, allow_hyphen_values = true)]
        mid: String,
        /// Defining polynomial of the top field C.
        #[arg(long, allow_hyphen_values = true)]
        top: String,
        /// theta_B as a polynomial in theta_C, constant term first.
        #[arg(long, allow_hyphen_values = true)]
        embed: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 4)]
        depth: i64,
    },
    /// Solidity of a catalog map out of Z.
    #[command(name = "check-solid")]
    CheckSolid {
        /// identity | localization:N | quotient:N
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Full dossier for a field: splitting, witnesses, tables, checks.
    Report {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version print normally; real parse errors are input
            // errors (exit 1)
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if benign {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    let precision = cli.precision.or_else(|| {
        std::env::var("RAMFORGE_PRECISION")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    match run::run(&cli.command, precision) {
        Ok(report) => {
            let rendered = match cli.format {
                Format::Json => report.to_json_string(),
                Format::Table => report.to_table_string(),
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => {
                    let mut stdout = std::io::stdout();
                    let _ = writeln!(stdout, "{rendered}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::PrecisionExhausted(_) => 2,
        Error::MismatchFailure(_)
        | Error::WitnessFailure(_)
        | Error::ExactnessFailure(_)
        | Error::NoLift(_) => 3,
        _ => 1,
    }
}
