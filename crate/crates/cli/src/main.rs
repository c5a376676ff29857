use std::process::ExitCode;

use clap::Parser;
use ksym::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("ksym: {}", e);
            ExitCode::from(e.exit_code())
        }
    }
}
