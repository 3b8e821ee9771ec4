use std::fs;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use qwiso_cli::{exit_code_for, run, Cli, EXIT_ERROR};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_ERROR),
            };
        }
    };

    let report = match run(&cli) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit_code_for(&e));
        }
    };

    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &report.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_ERROR);
            }
        }
        None => print!("{}", report.text),
    }
    ExitCode::from(report.exit_code)
}
