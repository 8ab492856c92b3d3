//! Command-line entry point: difficulty scoring and flight evaluation for
//! quadrotor navigation test cases.

mod commands;
mod config;
mod error;
mod svg;

use clap::{Parser, Subcommand};
use commands::{CorrArgs, EvalArgs, GenArgs, OutputFormat, ScoreArgs};
use error::CliError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "flightdiff",
    version,
    about = "Quantify quadrotor navigation test-case difficulty and evaluate recorded flights"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an obstacle scene and guide path from the configured scenario
    Gen {
        /// Run configuration with a [scenario.forest] or [scenario.maze] section
        #[arg(long)]
        config: PathBuf,
        /// Output directory for scene.xyz, path.json, case.json
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Override the scenario seed
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Score test-case difficulty: narrow space, view occlusion, turn sharpness
    Score {
        /// Run configuration; defaults apply when omitted
        #[arg(long)]
        config: Option<PathBuf>,
        /// Obstacle scene (.xyz points or .json primitives); omitted = obstacle-free
        #[arg(long)]
        scene: Option<PathBuf>,
        /// Guide path waypoint file
        #[arg(long)]
        path: PathBuf,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Output format for scores
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Evaluate recorded flight logs against a reference path
    Eval {
        /// Run configuration; defaults apply when omitted
        #[arg(long)]
        config: Option<PathBuf>,
        /// Flight log CSV; repeat to evaluate several logs in one run
        #[arg(long, required = true)]
        log: Vec<PathBuf>,
        /// Obstacle scene used for collision checks; omitted = obstacle-free
        #[arg(long)]
        scene: Option<PathBuf>,
        /// Reference guide path; its endpoint is the goal
        #[arg(long)]
        path: PathBuf,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Output format for reports
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Correlate difficulty and performance across a run table
    Corr {
        /// Run table CSV (one row per test case x method)
        table: PathBuf,
        /// Run configuration; defaults apply when omitted
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory for correlation.csv and correlation.svg
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { config, out, seed } => commands::cmd_gen(&GenArgs { config, out, seed }),
        Command::Score {
            config,
            scene,
            path,
            out,
            format,
        } => commands::cmd_score(&ScoreArgs {
            config,
            scene,
            path,
            out,
            format,
        }),
        Command::Eval {
            config,
            log,
            scene,
            path,
            out,
            format,
        } => commands::cmd_eval(&EvalArgs {
            config,
            logs: log,
            scene,
            path,
            out,
            format,
        }),
        Command::Corr { table, config, out } => {
            commands::cmd_corr(&CorrArgs { table, config, out })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let err = CliError::Usage(e.render().to_string().trim_end().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code());
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
