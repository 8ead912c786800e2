mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use commands::Command;
use config::{GlobalArgs, RunConfig};

/// Noncommutative symmetric functions, Bessel functions and their
/// enumerative specializations.
#[derive(Debug, Parser)]
#[command(name = "nbessel", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

const USAGE: u8 = 2;
const FAILED: u8 = 1;

fn fail(kind: &str, message: &str) -> ExitCode {
    let message = message.trim().replace('\n', " ");
    eprintln!("error[{kind}]: {message}");
    ExitCode::from(if kind == "verification" {
        FAILED
    } else {
        USAGE
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            return fail("usage", first);
        }
    };
    let cfg = match RunConfig::resolve(&cli.global) {
        Ok(c) => c,
        Err(e) => return fail(e.kind(), &e.to_string()),
    };
    let emitted = match commands::run(&cli.command, &cfg) {
        Ok(x) => x,
        Err(e) => return fail(e.kind(), &e.to_string()),
    };
    let body = emitted.render(cfg.format);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                return fail("io", &format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{body}"),
    }
    if emitted.failed {
        ExitCode::from(FAILED)
    } else {
        ExitCode::SUCCESS
    }
}
