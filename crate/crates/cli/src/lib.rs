//! Configuration, file output and subcommands for the `delaycomp` binary.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use delaycomp::Controller;

pub use commands::{
    cmd_compare, cmd_run, cmd_sweep, load_config, sweep_grid, CliError, EXIT_DIVERGED, EXIT_IO, EXIT_OK,
    EXIT_USAGE,
};
pub use config::{parse_config, Config, ConfigError};

#[derive(Debug, Parser)]
#[command(name = "delaycomp", version, about = "Input-delay compensation for a differential-drive robot")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Configuration file (`key = value` lines).
    #[arg(long)]
    config: PathBuf,
    /// Overrides `out_dir` from the configuration.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one controller and write its trajectory.
    Run {
        #[command(flatten)]
        common: Common,
        /// nodelay, naive, predictor-zform or predictor-window.
        #[arg(long)]
        controller: Option<String>,
    },
    /// Compare naive feedback with the predictor.
    Compare {
        #[command(flatten)]
        common: Common,
    },
    /// Sweep the input delay.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_negative_numbers = true)]
        h_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        h_max: f64,
        #[arg(long)]
        steps: usize,
    },
}

fn load(common: &Common) -> Result<Config, CliError> {
    let mut config = load_config(&common.config)?;
    if let Some(dir) = &common.out_dir {
        config.out_dir = dir.clone();
    }
    Ok(config)
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Run { common, controller } => {
            let config = load(&common)?;
            let controller = match controller {
                Some(name) => name
                    .parse::<Controller>()
                    .map_err(|e| CliError::Usage(e.to_string()))?,
                None => config.controller,
            };
            cmd_run(&config, controller)
        }
        Command::Compare { common } => cmd_compare(&load(&common)?),
        Command::Sweep {
            common,
            h_min,
            h_max,
            steps,
        } => cmd_sweep(&load(&common)?, h_min, h_max, steps),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
