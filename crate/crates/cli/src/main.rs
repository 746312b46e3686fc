//! `hecke`: command-line front end to `hecke-core`.
//!
//! Exit codes: 0 when every check passes, 1 on a failed verification,
//! 2 on invalid input, 3 when a resource guard trips.

mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hecke_core::Error;
use serde_json::json;

use config::{Cli, Command, RunConfig};

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => 3,
        Error::Consistency(_) => 1,
        _ => 2,
    }
}

fn error_kind(code: u8) -> &'static str {
    match code {
        1 => "verification",
        3 => "resource",
        _ => "validation",
    }
}

fn run(cli: &Cli) -> Result<(commands::Outcome, Option<std::path::PathBuf>), Error> {
    let (flags, default_trials) = match &cli.command {
        Command::Verify { suite: config::Suite::Inertia, flags } => (flags, 50),
        Command::Verify { flags, .. } => (flags, 100),
        Command::Datum(f) | Command::Poly(f) | Command::Eval(f) => (f, 0),
    };
    let cfg = RunConfig::from_flags(flags, default_trials)?;
    let outcome = match &cli.command {
        Command::Datum(_) => commands::datum(&cfg)?,
        Command::Poly(_) => commands::poly(&cfg)?,
        Command::Eval(_) => commands::eval(&cfg)?,
        Command::Verify { suite, .. } => commands::verify(*suite, &cfg)?,
    };
    Ok((outcome, cfg.out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((outcome, out)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, &outcome.text),
                None => std::io::stdout().lock().write_all(outcome.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("{}", json!({ "error": "io", "message": e.to_string() }));
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.pass { 0 } else { 1 })
        }
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("{}", json!({ "error": error_kind(code), "message": e.to_string() }));
            ExitCode::from(code)
        }
    }
}
