use std::process::ExitCode;

use clap::Parser;
use schinzel_cli::{execute, exit, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    let run = match execute(&cli) {
        Ok(run) => run,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(exit::USAGE as u8);
        }
    };
    match &cli.global.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, run.json()) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(exit::USAGE as u8);
            }
            println!("{}", run.summary);
        }
        None => {
            print!("{}", run.json());
            eprintln!("{}", run.summary);
        }
    }
    ExitCode::from(run.code as u8)
}
