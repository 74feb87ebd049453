mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use hankel_cone::Error;

use args::{Cli, Command};

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    /// Bad input, configuration or file access.
    Config(String),
    /// A computation that did not succeed.
    Numerical(String),
    /// The acceptance suite ran and something failed.
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Csv(_) | Error::Json(_) | Error::InvalidData(_) | Error::Coverage { .. } | Error::Domain(_) => {
                Failure::Config(e.to_string())
            }
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.shared.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let shared = &cli.shared;
    let result = match &cli.command {
        Command::Transform { path, both_paths, decay_rate, tau_max, tau_count } => {
            commands::transform(shared, *path, *both_paths, *decay_rate, *tau_max, *tau_count)
        }
        Command::Propagate { times } => commands::propagate(shared, times),
        Command::Expand { inverse, support } => commands::expand(shared, *inverse, *support),
        Command::Scatter { gammas, potential, zeta0, step } => commands::scatter(shared, gammas, *potential, *zeta0, *step),
        Command::Verify { only } => commands::verify(shared, only),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical failure: {m}");
            ExitCode::from(3)
        }
    }
}
