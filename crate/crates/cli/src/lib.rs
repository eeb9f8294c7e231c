//! Command-line front end: argument parsing, dispatch, JSON reports and
//! the exit-code contract (0 pass, 1 verification failure, 2 usage or parse
//! error, 3 I/O error).

pub mod acceptance;
pub mod commands;
pub mod corpus;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use qsvir_core::{DeformationMode, FamilyId, IndexRange, Rational};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: qsvir_core::AlgError,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Io { .. } => 3,
        }
    }
}

/// Verdict of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qsvir",
    version,
    about = "Exact checks for the classical, q- and (p,q)-deformed super Virasoro algebras",
    long_about = "Exact checks for the classical, q- and (p,q)-deformed super Virasoro algebras.\n\
                  Without a subcommand the full acceptance suite runs."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-order every relation instance on an index grid
    Verify(VerifyArgs),
    /// Specialize deformed relations at q = p = 1 and compare with the classical ones
    ClassicalLimit(LimitArgs),
    /// Hopf axioms, coproduct homomorphism and exponent-solver verdicts
    Hopf(HopfArgs),
    /// Solve for exchange exponents that make the coproduct a homomorphism
    SolveExponents(SolveArgs),
    /// Cross-check symbolic verdicts against a truncated Fock representation
    Fock(FockArgs),
    /// Parse algebra definition files and check the render round trip
    ParseCheck(ParseCheckArgs),
    /// Run the acceptance suite (the default)
    Acceptance(AcceptanceArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Range for the first index, `lo..hi` (inclusive) or a single integer
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true)]
    pub l_range: Option<IndexRange>,
    /// Range for the second index
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true)]
    pub k_range: Option<IndexRange>,
    /// Sets both index ranges
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true)]
    pub range: Option<IndexRange>,
    /// Comma-separated relation families (default: all)
    #[arg(long, value_delimiter = ',')]
    pub families: Vec<String>,
}

impl GridArgs {
    pub fn ranges(&self, default: IndexRange) -> (IndexRange, IndexRange) {
        let both = self.range.unwrap_or(default);
        (self.l_range.unwrap_or(both), self.k_range.unwrap_or(both))
    }

    pub fn family_ids(&self) -> Result<Vec<FamilyId>, CliError> {
        if self.families.is_empty() {
            return Ok(FamilyId::ALL.to_vec());
        }
        self.families
            .iter()
            .map(|f| f.parse().map_err(|e: String| CliError::Usage(e)))
            .collect()
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutArgs {
    /// Write the JSON report here instead of standard output
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "q")]
    pub mode: DeformationMode,
    /// Take rules, realizations and relations from an algebra definition file
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableSource {
    Paper,
    Solved,
}

#[derive(Debug, Clone, Args)]
pub struct HopfArgs {
    #[arg(long, default_value = "q")]
    pub mode: DeformationMode,
    /// Check coassociativity, counit and antipode on single letters
    #[arg(long)]
    pub axioms: bool,
    /// Check that the coproduct respects the relations
    #[arg(long)]
    pub homomorphism: bool,
    /// Letter indices for the axiom checks
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true, default_value = "-3..3")]
    pub indices: IndexRange,
    #[arg(long, value_enum, default_value = "paper")]
    pub table: TableSource,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[arg(long, default_value = "q")]
    pub mode: DeformationMode,
    /// Index grid the homomorphism residuals are expanded on
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true, default_value = "-1..4")]
    pub grid: IndexRange,
    /// Held-out grid for checking sampled tables
    #[arg(long, value_name = "RANGE", allow_hyphen_values = true, default_value = "5..8")]
    pub holdout: IndexRange,
    /// Tables sampled per consistent family
    #[arg(long, default_value_t = 3)]
    pub samples: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Comma-separated relation families (default: all)
    #[arg(long, value_delimiter = ',')]
    pub families: Vec<String>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FockArgs {
    #[arg(long, default_value = "q")]
    pub mode: DeformationMode,
    /// Sample value of q (an exact rational such as 3/2)
    #[arg(long, default_value = "3/2", allow_hyphen_values = true)]
    pub q: Rational,
    /// Sample value of p (default 5/7 in pq mode, 1 otherwise)
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<Rational>,
    /// Highest boson level kept
    #[arg(long, default_value_t = 12)]
    pub truncation: u32,
    /// Levels reserved above the checked kets
    #[arg(long, default_value_t = 8)]
    pub margin: u32,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ParseCheckArgs {
    /// Definition files to check
    #[arg(value_name = "PATH")]
    pub files: Vec<PathBuf>,
    /// Also accepted as a flag
    #[arg(long = "file", value_name = "PATH")]
    pub file_flags: Vec<PathBuf>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct AcceptanceArgs {
    #[command(flatten)]
    pub out: OutArgs,
}

/// Default grid of the relation checks.
pub const DEFAULT_GRID: IndexRange = IndexRange { lo: -1, hi: 6 };

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Emit `report` as pretty JSON to `out`, or to standard output.
pub fn emit<T: Serialize>(report: &T, out: &OutArgs) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).expect("reports serialize");
    match &out.out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        None => acceptance::run(&AcceptanceArgs::default()),
        Some(Command::Acceptance(a)) => acceptance::run(&a),
        Some(Command::Verify(a)) => commands::verify(&a),
        Some(Command::ClassicalLimit(a)) => commands::classical_limit(&a),
        Some(Command::Hopf(a)) => commands::hopf(&a),
        Some(Command::SolveExponents(a)) => commands::solve_exponents(&a),
        Some(Command::Fock(a)) => commands::fock(&a),
        Some(Command::ParseCheck(a)) => commands::parse_check(&a),
    }
}

/// Parse `args`, run, and map the result to a process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(o) => o.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
