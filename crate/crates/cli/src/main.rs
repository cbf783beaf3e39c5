mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command, RunConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap prints help/version to stdout with status 0 and real
            // usage errors to stderr with status 2.
            err.exit();
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let cfg = RunConfig::resolve(cli)?;
    let (content, code) = match cfg.command {
        Command::Trajectory => (commands::trajectory(&cfg)?, ExitCode::SUCCESS),
        Command::Sweep => (commands::sweep(&cfg)?, ExitCode::SUCCESS),
        Command::Periodicity => (commands::periodicity(&cfg)?, ExitCode::SUCCESS),
        Command::Verify => {
            let (content, all_ok) = commands::verify(&cfg)?;
            let code = if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
            (content, code)
        }
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?,
        None => std::io::stdout().write_all(content.as_bytes())?,
    }
    Ok(code)
}
