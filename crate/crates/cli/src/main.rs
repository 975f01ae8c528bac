//! `lglab`: batch front end for the lglab library.
//!
//! Exit status is 0 on success, 2 for bad input (unreadable or invalid model
//! files, unknown names, out-of-range parameters) and 3 when an internal
//! identity check fails, which signals an engine defect rather than a user
//! error.

mod commands;
mod report;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::source::{SourceArgs, ZooArgs};

#[derive(Parser, Debug)]
#[command(name = "lglab", version, about = "Leggett-Garg and macrorealism analyses of finite ontic models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

/// Flags accepted by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// `lg` exits with status 3 when the decomposition residual or any D3
    /// entry exceeds this in magnitude.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Search depth: context length for the complete non-disturbance check,
    /// transformation steps for classification candidates.
    #[arg(long, global = true, default_value_t = 2)]
    pub depth: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Leave the generation time out of reports, so identical runs give
    /// identical bytes.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a declared protocol and print its joint outcome distribution.
    Run {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        protocol: String,
        /// Also report the marginal on these axes (0-based, comma separated).
        #[arg(long, value_delimiter = ',')]
        marginal: Vec<usize>,
    },
    /// Leggett-Garg values, disturbance tables and the implication chain.
    Lg {
        #[command(flatten)]
        source: SourceArgs,
        /// Arrangement name; defaults to the first declared.
        #[arg(long)]
        arrangement: Option<String>,
    },
    /// Macrodefiniteness and the MR1/MR2/MR3 verdict for a quantity class.
    Classify {
        #[command(flatten)]
        source: SourceArgs,
        /// Quantity class label; defaults to the first declared.
        #[arg(long)]
        class: Option<String>,
    },
    /// Two-slit closed forms at one point, or a violation map.
    Twoslit(commands::TwoSlitArgs),
    /// Built-in models.
    Zoo {
        #[command(subcommand)]
        command: ZooCommand,
    },
}

#[derive(Subcommand, Debug)]
enum ZooCommand {
    /// List the built-in models.
    List,
    /// Write a built-in model as a model file.
    Export {
        name: String,
        #[command(flatten)]
        params: ZooArgs,
    },
}

/// Failure classes, mapped onto exit statuses.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("identity check failed: {0}")]
    Identity(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Identity(_) => 3,
        }
    }
}

impl From<lglab::Error> for CliError {
    fn from(e: lglab::Error) -> Self {
        match e {
            lglab::Error::EngineDefect(_) => CliError::Identity(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    if !(c.tol >= 0.0) {
        eprintln!("lglab: --tol must be a nonnegative number");
        return ExitCode::from(2);
    }
    let outcome = match cli.command {
        Command::Run { source, protocol, marginal } => commands::run(c, &source, &protocol, &marginal),
        Command::Lg { source, arrangement } => commands::lg(c, &source, arrangement.as_deref()),
        Command::Classify { source, class } => commands::classify(c, &source, class.as_deref()),
        Command::Twoslit(args) => commands::twoslit(c, &args),
        Command::Zoo { command: ZooCommand::List } => commands::zoo_list(c),
        Command::Zoo {
            command: ZooCommand::Export { name, params },
        } => commands::zoo_export(c, &name, &params),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lglab: {e}");
            ExitCode::from(e.code())
        }
    }
}
