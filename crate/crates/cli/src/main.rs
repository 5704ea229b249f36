use std::process::ExitCode;

use clap::Parser;
use hyperzero_cli::{deliver, run, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let result = run(&config).and_then(|outcome| deliver(&config, &outcome).map(|()| outcome));
    match result {
        Ok(outcome) => {
            if !outcome.passed {
                eprintln!("hyperzero: verification failed");
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("hyperzero: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
