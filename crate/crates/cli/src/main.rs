use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use kummer_cli::{json, run, Cli, CliError};

fn emit(text: &str) {
    // a closed pipe is not an error worth reporting
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(&json::render(&v, cli.compact));
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Mismatch(report) = &e {
                emit(&json::render(report, cli.compact));
            }
            eprintln!("kd: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
