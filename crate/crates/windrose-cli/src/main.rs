//! `windrose`: runway orientation analysis from wind observations.
//!
//! Exit codes: 0 success, 1 validation failure, 2 I/O or parse failure,
//! 3 internal error.

mod cli;
mod error;
mod formats;
mod report;

use std::process::ExitCode;

fn main() -> ExitCode {
    match std::panic::catch_unwind(cli::run) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
        Err(_) => {
            eprintln!("error: internal failure");
            ExitCode::from(3)
        }
    }
}
