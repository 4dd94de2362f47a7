use std::path::PathBuf;
use std::process::ExitCode;

use bratteli_cli::{exit, run, Cli, CliError, RunConfig, OUT_DIR_ENV};
use clap::Parser;

fn main() -> ExitCode {
    let config = RunConfig::from(Cli::parse());
    match execute(&config) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(exit::CHECK_FAILED as u8),
        Err(e) => {
            eprintln!("bratteli {}: {e}", config.command.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(config: &RunConfig) -> Result<bool, CliError> {
    let output = run(config)?;
    let out_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match config.destination(out_dir.as_deref()) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| CliError::Io { path: parent.into(), source: e })?;
            }
            std::fs::write(&path, &output.text).map_err(|e| CliError::Io { path: path.clone(), source: e })?;
        }
        None => print!("{}", output.text),
    }
    Ok(output.passed)
}
