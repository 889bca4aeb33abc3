mod check;
mod contract;
mod orbit;
mod spectrum;
mod wavefunction;

use crate::config::{Command, RunConfig};
use crate::output::Table;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Library(#[from] kepler_duality::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Tables produced by a command. The first has no suffix and goes to the main output;
/// suffixed tables are written next to it.
pub struct Outcome {
    pub tables: Vec<(Option<&'static str>, Table)>,
    pub failed: bool,
}

pub fn dispatch(cfg: &RunConfig) -> Result<Outcome, AppError> {
    match cfg.command {
        Command::Spectrum => spectrum::run(cfg),
        Command::Check => check::run(cfg),
        Command::Orbit => orbit::run(cfg),
        Command::Wavefunction => wavefunction::run(cfg),
        Command::Contract => contract::run(cfg),
    }
}
