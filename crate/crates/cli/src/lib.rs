//! Front end for the `estgame` binary: solving, sweeping, simulating and
//! verifying remote estimation games from the command line.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a mismatch, 2 on usage or
//! configuration errors.

pub mod args;
pub mod commands;
mod error;
pub mod manifest;
pub mod svg;
pub mod sweep;
pub mod verify;

use std::io::Write;
use std::process::ExitCode;

pub use args::{Cli, Command};
pub use commands::Outcome;
pub use error::CliError;

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Solve(a) => commands::cmd_solve(a, out),
        Command::Sweep(a) => commands::cmd_sweep(a, out),
        Command::Simulate(a) => commands::cmd_simulate(a, out),
        Command::Verify(a) => commands::cmd_verify(a, out),
        Command::Figures(a) => commands::cmd_figures(a, out),
    }
}

pub fn exit_code(result: &Result<Outcome, CliError>) -> ExitCode {
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(_) => ExitCode::from(2),
    }
}
