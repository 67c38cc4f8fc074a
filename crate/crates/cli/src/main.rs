mod commands;
mod config;

use std::fs;
use std::process::ExitCode;

use clap::Parser;
use cuspidal_core::{Error, Result};

use commands::Outcome;
use config::{Cli, Command, RunConfig};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("CUSPIDAL_THREADS") else {
        return Ok(());
    };
    let threads: usize = value.parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Error::Parameter(format!(
            "CUSPIDAL_THREADS must be a positive integer, got {value:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Parameter(e.to_string()))
}

fn run(cli: &Cli) -> Result<(Outcome, Option<std::path::PathBuf>)> {
    configure_threads()?;
    let outcome = match &cli.command {
        Command::Hom(args) => return Ok((commands::hom(args)?, args.out.clone())),
        Command::Verify(args)
        | Command::Sl2(args)
        | Command::Reconstruct(args)
        | Command::ExtDemo(args)
        | Command::Gen(args) => {
            let cfg = RunConfig::from_args(args)?;
            let outcome = match &cli.command {
                Command::Verify(_) => commands::verify(&cfg)?,
                Command::Sl2(_) => commands::sl2(&cfg)?,
                Command::Reconstruct(_) => commands::reconstruct(&cfg)?,
                Command::ExtDemo(_) => commands::ext_demo(&cfg)?,
                _ => commands::gen(&cfg)?,
            };
            (outcome, args.out.clone())
        }
    };
    Ok(outcome)
}

/// Errors from bad input map to the usage exit code; anything else raised
/// while checking is a failed verification.
fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Parameter(_)
            | Error::UnsupportedParameter(_)
            | Error::Document(_)
            | Error::Dimension(_)
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (outcome, out) = match run(&cli) {
        Ok(result) => result,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if is_usage(&e) {
                EXIT_USAGE
            } else {
                EXIT_VIOLATION
            });
        }
    };
    let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, text + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE);
            }
            for line in &outcome.summary {
                println!("{line}");
            }
        }
        None => {
            for line in &outcome.summary {
                eprintln!("{line}");
            }
            println!("{text}");
        }
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATION)
    }
}
