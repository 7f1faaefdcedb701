use std::io;
use std::process::ExitCode;

use clap::Parser;
use nilkit_cli::args::Cli;
use nilkit_cli::{run, EXIT_INPUT};

fn main() -> ExitCode {
    let config = match Cli::parse().into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let code = run(&config, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
