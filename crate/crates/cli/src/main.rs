use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use sombor_cli::{execute, parse_args, CliError, EXIT_ERROR};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let config = match parse_args(&argv) {
        Ok(config) => config,
        Err(CliError::Help(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_ERROR);
        }
    };

    let outcome = match execute(&config) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    eprint!("{}", outcome.diagnostics);

    let written = match &config.out {
        Some(path) => fs::write(path, &outcome.output),
        None => io::stdout().lock().write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_ERROR);
    }
    ExitCode::from(outcome.exit_code)
}
