use std::process::ExitCode;

use clap::Parser;

use gruen_cli::{run, to_json, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            if cli.json {
                print!("{}", to_json(&outcome.envelope));
            } else {
                print!("{}", outcome.human);
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(failure) => {
            eprintln!("gruen: error: {}", failure.message);
            ExitCode::from(failure.exit_code as u8)
        }
    }
}
