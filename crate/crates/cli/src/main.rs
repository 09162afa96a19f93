use std::process::ExitCode;

use clap::Parser;
use estgame_cli::{execute, exit_code, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let result = execute(&cli, &mut stdout.lock());
    if let Err(err) = &result {
        eprintln!("error: {err}");
    }
    exit_code(&result)
}
