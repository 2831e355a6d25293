//! Command-line interface.

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use nsht::{Algorithm, Matrix, ProblemDescriptor};
use std::io::Write;
use std::path::PathBuf;

use crate::certify::{run_certify, CertifyRequest, SuppliedDeltas};
use crate::format::{load_matrix, write_descriptor, write_matrix};
use crate::output::{sidecar_path, write_cells, write_json, write_trace, Provenance, Sidecar};
use crate::run::{run_grid, run_trace};
use crate::spec::{ExperimentKind, ExperimentSpec, Preset, SpecOverrides, DEFAULT_SEED};

#[derive(Debug, Parser)]
#[command(name = "nsht-bench", version, about = "Sparse recovery experiments with NSIHT, NSHTP, IHT and HTP")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residual of every algorithm per iteration on one problem.
    Trace(GridArgs),
    /// Success rates over a sparsity grid.
    Phase(GridArgs),
    /// Success rates over an (epsilon, lambda) grid.
    Sweep(GridArgs),
    /// Success rates from noisy measurements.
    Noisy(GridArgs),
    /// Parameter window and convergence certificate for a matrix.
    Certify(CertifyArgs),
    /// Write a problem descriptor and optionally its matrix.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub spec: SpecOverrides,
    /// JSON config file with any subset of the spec fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Preset::Desk)]
    pub preset: Preset,
    /// CSV output path; a JSON sidecar is written next to it. Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 picks the number of cores.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Matrix payload or problem descriptor; otherwise a Gaussian matrix from --m, --n, --seed.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    pub m: usize,
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "nsiht,nshtp", value_parser = parse_algorithm)]
    pub algo: Vec<Algorithm>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub deltak: Option<f64>,
    #[arg(long)]
    pub delta2k: Option<f64>,
    #[arg(long)]
    pub delta3k: Option<f64>,
    /// Largest number of column subsets the exact RIC may enumerate.
    #[arg(long, default_value_t = nsht::ric::DEFAULT_ENUMERATION_BUDGET)]
    pub budget: u128,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 100)]
    pub m: usize,
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    #[arg(long, default_value_t = 0.0)]
    pub noise_scale: f64,
    #[arg(long)]
    pub noise_norm: bool,
    /// Descriptor path; defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the matrix in the raw payload format.
    #[arg(long)]
    pub payload: Option<PathBuf>,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: nsht::Error| e.to_string())
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(
            std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn grid(kind: ExperimentKind, args: &GridArgs) -> Result<()> {
    let spec = ExperimentSpec::resolve(kind, args.preset, args.config.as_deref(), &args.spec)?;
    let provenance = Provenance::now(spec.seed);
    if kind == ExperimentKind::ResidualTrace {
        let report = run_trace(&spec)?;
        write_trace(&report.rows, output(&args.out)?)?;
        if let Some(out) = &args.out {
            let sidecar = Sidecar {
                provenance,
                spec: &spec,
                csv: out.display().to_string(),
                summary: &report,
            };
            write_json(&sidecar_path(out), &sidecar)?;
        }
        return Ok(());
    }
    let records = run_grid(&spec, args.workers)?;
    write_cells(&records, output(&args.out)?)?;
    if let Some(out) = &args.out {
        let cells = records.len();
        let sidecar = Sidecar {
            provenance,
            spec: &spec,
            csv: out.display().to_string(),
            summary: serde_json::json!({
                "records": cells,
                "problem_cells": spec.problem_cells().len(),
                "total_trials": spec.problem_cells().len() * spec.trials,
            }),
        };
        write_json(&sidecar_path(out), &sidecar)?;
    }
    Ok(())
}

fn certify_command(args: &CertifyArgs) -> Result<()> {
    let (matrix, source): (Matrix, String) = match &args.matrix {
        Some(p) => (load_matrix(p)?, p.display().to_string()),
        None => {
            let d = ProblemDescriptor::new(args.m, args.n, args.k.min(args.n).max(1), 0.0, args.seed);
            (d.generate::<f64>()?.a, format!("gaussian {}x{} seed {}", args.m, args.n, args.seed))
        }
    };
    let mut req = CertifyRequest::new(matrix, source, args.k);
    req.algorithms = args.algo.clone();
    req.epsilon = args.epsilon;
    req.lambda = args.lambda;
    req.deltas = SuppliedDeltas {
        delta_k: args.deltak,
        delta_2k: args.delta2k,
        delta_3k: args.delta3k,
    };
    req.budget = args.budget;
    let report = run_certify(&req)?;
    let mut out = output(&args.out)?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    Ok(())
}

fn gen_command(args: &GenArgs) -> Result<()> {
    let mut d = ProblemDescriptor::new(args.m, args.n, args.k, args.noise_scale, args.seed);
    d.stream = args.stream;
    d.noise_norm = args.noise_norm;
    let problem = d.generate::<f64>()?;
    match &args.out {
        Some(path) => write_descriptor(path, &d)?,
        None => println!("{}", serde_json::to_string_pretty(&d)?),
    }
    if let Some(path) = &args.payload {
        let file = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        write_matrix(&problem.a, std::io::BufWriter::new(file))?;
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Trace(a) => grid(ExperimentKind::ResidualTrace, a),
        Command::Phase(a) => grid(ExperimentKind::PhaseTransition, a),
        Command::Sweep(a) => grid(ExperimentKind::ParameterSweep, a),
        Command::Noisy(a) => grid(ExperimentKind::NoisyRecovery, a),
        Command::Certify(a) => certify_command(a),
        Command::Gen(a) => gen_command(a),
    }
}
