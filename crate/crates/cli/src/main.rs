use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Map};
use torsor_cli::commands::{exit_code, run, Cli};
use torsor_cli::report::{Failure, Report, Status};

/// Writes to stdout, stopping quietly if the reader has gone away.
fn emit(lines: &[String]) {
    let mut out = std::io::stdout().lock();
    for line in lines {
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
    let _ = out.flush();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            if cli.json {
                emit(&[outcome.report.to_json()]);
            } else {
                emit(&outcome.text);
            }
            ExitCode::from(exit_code(&outcome.report) as u8)
        }
        Err(e) => {
            if cli.json {
                let mut report = Report::new("error", Map::new());
                report.status = Status::Error;
                report.failure = Some(Failure::new("input", json!({"error": e.to_string()})));
                emit(&[report.to_json()]);
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
