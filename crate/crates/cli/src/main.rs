use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use samoeba_cli::{execute, output_path, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|outcome| {
        match output_path(&cli)? {
            Some(path) => std::fs::write(&path, &outcome.text)?,
            None => std::io::stdout().write_all(outcome.text.as_bytes())?,
        }
        Ok(outcome.status)
    });
    match result {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
