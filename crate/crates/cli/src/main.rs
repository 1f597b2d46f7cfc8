//! `omvar`: oriented matroid and Varchenko determinant checks from the
//! command line. Every command prints one JSON object with sorted keys.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(name = "omvar", version, about = "Varchenko determinants of oriented matroids")]
pub struct Cli {
    /// Arrangement JSON or covector text file.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Input format; inferred from the extension when omitted (.json is an
    /// arrangement).
    #[arg(long, global = true, value_enum)]
    kind: Option<InputKind>,
    #[arg(long, global = true, default_value_t = omvar::poly::DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = omvar::poly::DEFAULT_SYMBOLIC_LIMIT)]
    max_symbolic: usize,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Linear order on the elements, smallest first, e.g. "2,0,1".
    #[arg(long, global = true)]
    element_order: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Arrangement,
    Covectors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum DetMode {
    Symbolic,
    Modp,
    Formula,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the covector axioms.
    Axioms,
    /// Determinant of the Varchenko matrix by one or more methods.
    Det {
        /// Repeatable; defaults to formula and modp, plus symbolic when the
        /// matrix is within the size guard.
        #[arg(long, value_enum)]
        mode: Vec<DetMode>,
    },
    /// Check the product formula for the Varchenko matrix.
    Factorize,
    /// A supertope, its closedness and its reduced homology.
    Supertope {
        #[arg(long, default_value = "")]
        plus: String,
        #[arg(long, default_value = "")]
        minus: String,
        /// Base tope as a sign string; defaults to the first tope.
        #[arg(long)]
        base: Option<String>,
    },
    /// Determinant of the Varchenko matrix of a closed supertope.
    Cone {
        /// Sign pattern such as "0:+,2:-".
        #[arg(long)]
        signs: String,
    },
    /// Compare the determinant formula before and after reorientation.
    Invariance {
        /// Elements to reorient, e.g. "0,2".
        #[arg(long, default_value = "")]
        reorient: String,
    },
    /// Flats, beta invariant and refined exponents of the underlying matroid.
    Matroid,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Outcome { json, passed }) => {
            let text = serde_json::to_string_pretty(&json).expect("serializable") + "\n";
            if let Err(err) = commands::emit(&cli, &text) {
                eprintln!("omvar: {err}");
                return ExitCode::from(2);
            }
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(err) => {
            eprintln!("omvar: {err}");
            ExitCode::from(match err {
                CliError::Input(_) => 2,
                CliError::Guard(_) => 3,
            })
        }
    }
}
