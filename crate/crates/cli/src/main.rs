//! `bbres`: Baum–Bott residues of codimension-one foliations on projective
//! space from a JSON problem file.
//!
//! Exit codes: 0 when every check passes, 2 on a mathematical failure and 1
//! on input or resource errors.

mod pipeline;
mod problem;
mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::pipeline::Stage;
use crate::problem::Overrides;
use crate::report::{Report, Status};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },

    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },

    #[error("invalid input at {pointer}: {message}")]
    Input { pointer: String, message: String },

    #[error(transparent)]
    Math(#[from] bbresidue::Error),
}

#[derive(Debug, Parser)]
#[command(name = "bbres", version, about = "Baum-Bott residues of singular holomorphic foliations")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Tolerance of the boundary-integral oracle.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Maximum S-pair reductions per Gröbner basis.
    #[arg(long, global = true)]
    budget: Option<usize>,

    /// Skip the boundary-integral cross-check of exact residues.
    #[arg(long, global = true)]
    no_crosscheck: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Zeros of the restricted vector field on each disc.
    Sing { file: PathBuf },
    /// Verify the declared components and the genericity of their discs.
    Verify { file: PathBuf },
    /// Verify and compute the residue of every component.
    Residues { file: PathBuf },
    /// Residues followed by the global check against φ(N_F).
    Check { file: PathBuf },
    /// Boundary-integral residues at three radii.
    Bm {
        file: PathBuf,
        /// Largest sphere radius; defaults to a fraction of the distance to
        /// the nearest other zero.
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Split ψ(ρ) into φ, φ⁰ and φʲ.
    CenklDecompose {
        #[arg(long)]
        psi: String,
    },
    /// A ψ with the given φ slot.
    CenklLift {
        #[arg(long)]
        phi: String,
    },
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn emit<B: Serialize>(report: &Report<B>, out: Option<&Path>) -> Result<Status, CliError> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, &text).map_err(|source| CliError::Write { path: path.display().to_string(), source })?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Write { path: "<stdout>".into(), source })?;
        }
    }
    Ok(report.status)
}

fn run_file(stage: Stage, file: &Path, overrides: &Overrides, out: Option<&Path>) -> Result<Status, CliError> {
    let bytes = fs::read(file).map_err(|source| CliError::Read { path: file.display().to_string(), source })?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Schema { pointer: String::new(), message: "input is not UTF-8".into() })?;
    let parsed = problem::parse(&text)?;
    let problem = problem::build(&parsed, overrides)?;
    let report = pipeline::run(stage, &problem, sha256_hex(&bytes))?;
    emit(&report, out)
}

fn run(cli: Cli) -> Result<Status, CliError> {
    let mut overrides = Overrides { tol: cli.tol, budget: cli.budget, no_crosscheck: cli.no_crosscheck, radius: None };
    let out = cli.out.as_deref();
    match cli.command {
        Command::Sing { file } => run_file(Stage::Sing, &file, &overrides, out),
        Command::Verify { file } => run_file(Stage::Verify, &file, &overrides, out),
        Command::Residues { file } => run_file(Stage::Residues, &file, &overrides, out),
        Command::Check { file } => run_file(Stage::Check, &file, &overrides, out),
        Command::Bm { file, radius } => {
            overrides.radius = radius;
            run_file(Stage::Bm, &file, &overrides, out)
        }
        Command::CenklDecompose { psi } => emit(&pipeline::cenkl_decompose(&psi, sha256_hex(psi.as_bytes()))?, out),
        Command::CenklLift { phi } => emit(&pipeline::cenkl_lift(&phi, sha256_hex(phi.as_bytes()))?, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
