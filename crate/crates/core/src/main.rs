mod cli;

use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, ExitStatus};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ExitStatus::Usage as u8 } else { 0 });
        }
    };
    match cli::run(cli.command) {
        Ok(status) => ExitCode::from(status as u8),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.status as u8)
        }
    }
}
