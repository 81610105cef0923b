// SPDX-License-Identifier: Apache-2.0

mod args;
mod commands;
mod input;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Exit status: 0 success or expected outcome, 1 regression mismatch,
/// 2 parse error, 3 failed precondition.
pub enum Failure {
    Mismatch,
    Parse(String),
    Precondition(permlab::Error),
}

impl From<permlab::Error> for Failure {
    fn from(e: permlab::Error) -> Self {
        match e {
            permlab::Error::Parse(msg) => Failure::Parse(msg),
            other => Failure::Precondition(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let workers = cli.workers;
    let run = || commands::run(&cli);
    let result = match workers {
        Some(w) => permlab::par::with_workers(w, run),
        None => run(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Parse(msg)) => {
            eprintln!("error: Parse: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(3)
        }
    }
}
