//! `esreal`: command-line front end for realized ecosystem service accounting.
//!
//! Exit codes: 0 success, 1 I/O or parse failure, 2 validation or domain
//! failure, 3 simulator/pipeline mismatch.

mod commands;
mod tabular;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use esreal_core::DEFAULT_EPSILON;

#[derive(Debug, Parser)]
#[command(name = "esreal", version, about = "Supply, demand, flow and use accounting for ecosystem services")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Structured,
    Tabular,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value = "structured")]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check ledgers against their flow profiles and stage balances.
    Validate {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate every ledger of a document.
    Evaluate {
        input: PathBuf,
        /// Tolerance on the balance index for the balanced type.
        #[arg(long, default_value_t = DEFAULT_EPSILON, allow_negative_numbers = true)]
        epsilon: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Summarize the services of one region.
    Bundle {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPSILON, allow_negative_numbers = true)]
        epsilon: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate an ordered multi-period series of one service.
    Series {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPSILON, allow_negative_numbers = true)]
        epsilon: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Linear area-to-service relationships and balanced area sizes.
    Scaling(commands::ScalingArgs),
    /// Run the park simulator and compare its realized use with the pipeline.
    Simulate(commands::SimulateArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let result = match cli.command {
        Command::Validate { input, out } => commands::validate(&input, out.as_deref()),
        Command::Evaluate {
            input,
            epsilon,
            output,
        } => commands::evaluate(&input, epsilon, &output),
        Command::Bundle {
            input,
            epsilon,
            output,
        } => commands::bundle(&input, epsilon, &output),
        Command::Series {
            input,
            epsilon,
            output,
        } => commands::series(&input, epsilon, &output),
        Command::Scaling(args) => commands::scaling(&args),
        Command::Simulate(args) => commands::simulate(&args),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            for line in e.details() {
                eprintln!("  {line}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
