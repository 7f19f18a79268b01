//! Command-line front end. `run` maps argv to a library operation and
//! returns the process exit status: 0 on success, 1 on data or estimation
//! errors (and failed reproduction checks), 2 on usage errors.

pub mod args;
mod commands;
pub mod config;
pub mod plot;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

use args::{Cli, Command};
use commands::CliError;
use config::RunConfig;

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn execute(command: &Command) -> Result<bool, CliError> {
    let file = match &command.common().config {
        Some(path) => RunConfig::load(path).map_err(CliError::Usage)?,
        None => RunConfig::default(),
    };
    let cfg = file.overlay(&command.flags());
    match command {
        Command::Ingest(_) => commands::ingest(&cfg)?,
        Command::Unitroot(_) => commands::unitroot(&cfg)?,
        Command::Correlogram(_) => commands::correlogram_cmd(&cfg)?,
        Command::Fit(_) => commands::fit_cmd(&cfg)?,
        Command::Grid(_) => commands::grid(&cfg)?,
        Command::Autofit(_) => commands::autofit(&cfg)?,
        Command::Forecast(_) => commands::forecast_cmd(&cfg)?,
        Command::Scenario(_) => commands::scenario(&cfg)?,
        Command::ReproducePaper(_) => return commands::reproduce(&cfg),
    }
    Ok(true)
}
