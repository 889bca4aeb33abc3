//! `kdual`: spectra, wavefunctions, identity checks, classical orbits and contraction sweeps
//! for the Kepler-Coulomb / oscillator duality on spheres.

// `!(x > 0.0)` style checks are deliberate: NaN must fail them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use commands::{AppError, Outcome};
use config::{Command, RunConfig, Settings};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Parser)]
#[command(name = "kdual", version, about = "Kepler-Coulomb / oscillator duality on spheres")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    settings: Settings,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Sub {
    /// Coulomb levels with their oscillator parameters.
    Spectrum,
    /// Identity, metric, Laplacian, volume, spectrum and contour checks.
    Check,
    /// Direct and regularized classical orbits from the same initial data.
    Orbit,
    /// Coulomb wavefunction sampled on an angle grid.
    Wavefunction,
    /// Sphere-to-flat convergence over a radius sweep.
    Contract,
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Spectrum => Command::Spectrum,
            Sub::Check => Command::Check,
            Sub::Orbit => Command::Orbit,
            Sub::Wavefunction => Command::Wavefunction,
            Sub::Contract => Command::Contract,
        }
    }
}

const EXIT_VALIDATION: u8 = 1;
const EXIT_CHECK_FAILED: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}

fn run(cli: Cli) -> Result<bool, AppError> {
    let settings = config::merge(cli.settings).map_err(AppError::Validation)?;
    let cfg = RunConfig::resolve(cli.command.into(), settings).map_err(AppError::Validation)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cfg.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| AppError::Validation(format!("cannot start {} workers: {e}", cfg.jobs.unwrap_or(0))))?;
    let outcome = pool.install(|| commands::dispatch(&cfg))?;
    emit(&cfg, &outcome)?;
    Ok(outcome.failed)
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{suffix}"),
    };
    path.with_file_name(name)
}

fn emit(cfg: &RunConfig, outcome: &Outcome) -> Result<(), AppError> {
    let stamp = cfg.timestamp.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
    for (suffix, table) in &outcome.tables {
        let text = table.render(cfg.format, stamp);
        match (&cfg.output, suffix) {
            (Some(path), None) => write_file(path, &text)?,
            (Some(path), Some(sfx)) => write_file(&sibling(path, sfx), &text)?,
            (None, None) => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes()).map_err(|e| AppError::Io { path: "stdout".into(), source: e })?;
            }
            // trajectories and other bulk tables need a file to go to
            (None, Some(sfx)) => eprintln!("note: {sfx} table not written; pass --output to save it"),
        }
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), AppError> {
    std::fs::write(path, text).map_err(|e| AppError::Io { path: path.display().to_string(), source: e })
}
