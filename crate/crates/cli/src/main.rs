mod args;
mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::Status;
use crate::config::RunConfig;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(genset_core::Error),
}

impl From<genset_core::Error> for CliError {
    fn from(e: genset_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource_limit() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    let result = RunConfig::resolve(&cli.global).and_then(|cfg| {
        if let Some(threads) = cfg.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build_global()
                .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
        }
        commands::run(&cli.command, cli.global.format, &cfg)
    });
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(match out.status {
                Status::Ok => 0,
                Status::PropertyFailed => 1,
                Status::Inconclusive => 3,
            })
        }
        Err(e) => {
            eprintln!("genset: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
