use std::process::ExitCode;

use checkers_cli::{execute, Cli, CliError};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.into_config().and_then(|config| execute(&config)) {
        Ok(outcome) => {
            for notice in &outcome.report.notices {
                eprintln!("{notice}");
            }
            match &outcome.report.failure {
                None => ExitCode::SUCCESS,
                Some(reason) => {
                    eprintln!(
                        "{}",
                        serde_json::json!({ "error": "check-failed", "message": reason })
                    );
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code() as u8)
}
