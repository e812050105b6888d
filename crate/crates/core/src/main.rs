use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use hopcalc::cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli, &mut io::stdin().lock()) {
        Ok(outcome) => {
            let mut out = io::stdout().lock();
            if out
                .write_all(outcome.text.as_bytes())
                .and_then(|()| out.flush())
                .is_err()
            {
                return ExitCode::FAILURE;
            }
            ExitCode::from(outcome.status as u8)
        }
        Err(err) => {
            eprintln!("hopcalc: {err}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
