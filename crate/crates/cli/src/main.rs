//! `polarosc` command-line tool.
//!
//! Exit status: 0 on success, 2 for invalid input, 3 when the numerics do not
//! apply to the input, 4 for I/O failures.

mod commands;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polarosc::spectral::SpectralConfig;
use polarosc::{Error, ErrorClass, Result};

#[derive(Parser, Debug)]
#[command(name = "polarosc", version, about = "Oscillation dynamics and polarization on weighted digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph file.
    Gen(commands::gen::GenArgs),
    /// Spectral and Hamiltonian analysis of a graph, as JSON.
    Analyze(commands::analyze::AnalyzeArgs),
    /// Sample a trajectory with one of the solvers.
    Simulate(commands::simulate::SimulateArgs),
    /// Run a polarization scenario from a JSON config.
    Polarize(commands::polarize::PolarizeArgs),
    /// Dump a graph matrix as CSV or a sparsity pattern as a PBM grid.
    Export(commands::export::ExportArgs),
}

/// Spectral tolerance overrides, relative to `max |L_ij|`.
#[derive(Args, Debug, Clone)]
pub struct Tolerances {
    /// Eigenvalues below this are treated as exact zeros.
    #[arg(long, default_value_t = SpectralConfig::default().zero_rel)]
    zero_rel: f64,
    /// Largest imaginary part accepted as a real eigenvalue.
    #[arg(long, default_value_t = SpectralConfig::default().complex_rel)]
    complex_rel: f64,
    /// Largest accepted condition number of the eigenvector matrix.
    #[arg(long, default_value_t = SpectralConfig::default().cond_max)]
    cond_max: f64,
}

impl Tolerances {
    pub fn config(&self) -> SpectralConfig {
        SpectralConfig {
            zero_rel: self.zero_rel,
            complex_rel: self.complex_rel,
            cond_max: self.cond_max,
            ..SpectralConfig::default()
        }
    }
}

/// Writes `content` to `path`, or to standard output when there is none.
pub fn emit(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, content)?;
        }
        None => std::io::stdout().lock().write_all(content.as_bytes())?,
    }
    Ok(())
}

pub fn to_json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

pub fn read_text(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Validation => 2,
        ErrorClass::Numerical => 3,
        ErrorClass::Io => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => commands::gen::run(&args),
        Command::Analyze(args) => commands::analyze::run(&args),
        Command::Simulate(args) => commands::simulate::run(&args),
        Command::Polarize(args) => commands::polarize::run(&args),
        Command::Export(args) => commands::export::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
