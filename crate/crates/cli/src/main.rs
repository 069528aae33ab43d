mod args;
mod run;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::run::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("valuadef: {e}");
            ExitCode::from(match e {
                CliError::Core(_) => 2,
                CliError::Io { .. } => 3,
            })
        }
    }
}
