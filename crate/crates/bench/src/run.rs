//! Experiment runners.

use anyhow::{Context, Result};
use nsht::solver::solve_with_kernel;
use nsht::{
    Algorithm, Config, Matrix, Problem, ProblemDescriptor, RegularizedKernel, Status, StopRule,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::seed::trial_seed;
use crate::spec::{ExperimentSpec, ProblemCell, SolverCell};

/// One row of a grid report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellRecord {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub algorithm: Algorithm,
    pub epsilon: f64,
    pub lambda: f64,
    pub iters: usize,
    pub trials: usize,
    pub successes: usize,
    pub rate: f64,
    pub mean_iters_success: Option<f64>,
    pub failures_numeric: usize,
}

/// How one solver run ended, at the largest iteration budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Outcome {
    converged_at: Option<usize>,
    failed_at: Option<usize>,
}

pub fn descriptor(spec: &ExperimentSpec, cell: ProblemCell, trial: usize) -> ProblemDescriptor {
    let seed = trial_seed(spec.seed, cell.m, cell.n, cell.k, spec.noise_scale, spec.noise_norm, trial);
    let mut d = ProblemDescriptor::new(cell.m, cell.n, cell.k, spec.noise_scale, seed);
    d.noise_norm = spec.noise_norm;
    d
}

/// `‖A‖₂²` by a fixed number of power iterations on `AᵀA`.
pub fn spectral_norm_squared_estimate(a: &Matrix) -> f64 {
    let n = a.cols();
    let mut v = nsht::Vector::from_f64(&vec![1.0 / (n as f64).sqrt(); n]).expect("finite start vector");
    let mut estimate = 0.0;
    for _ in 0..100 {
        let w = a.mul_vec_transposed(&a.mul_vec(&v).expect("matching sizes")).expect("matching sizes");
        estimate = v.dot(&w);
        let norm = w.norm2();
        if norm == 0.0 {
            return 0.0;
        }
        v = w.scaled(1.0 / norm);
    }
    estimate
}

/// Effective stepsize for one algorithm: λ for the Newton variants, and
/// `baseline_lambda / ‖A‖₂²` for the gradient baselines.
fn step_for(cell: &SolverCell, spec: &ExperimentSpec, norm_sq: &mut Option<f64>, a: &Matrix) -> f64 {
    if cell.algorithm.uses_newton_direction() {
        cell.lambda
    } else {
        let s = *norm_sq.get_or_insert_with(|| spectral_norm_squared_estimate(a));
        spec.baseline_lambda / s
    }
}

fn kernels<'a>(spec: &ExperimentSpec, a: &'a Matrix) -> Result<Vec<Option<RegularizedKernel<'a, f64>>>> {
    let newton = spec.algo.iter().any(|a| a.uses_newton_direction());
    spec.epsilon
        .iter()
        .map(|&e| {
            if newton {
                Ok(Some(RegularizedKernel::new(a, e)?))
            } else {
                Ok(None)
            }
        })
        .collect()
}

fn run_trial(spec: &ExperimentSpec, cell: ProblemCell, trial: usize) -> Result<Vec<Outcome>> {
    let problem: Problem = descriptor(spec, cell, trial).generate()?;
    let kernels = kernels(spec, &problem.a)?;
    let budget = spec.max_iters();
    let mut norm_sq = None;
    let mut out = Vec::new();
    for solver in spec.solver_cells() {
        let e = spec.epsilon.iter().position(|&e| e == solver.epsilon).expect("epsilon from the grid");
        let config = Config::new(solver.algorithm, cell.k)
            .epsilon(solver.epsilon)
            .lambda(step_for(&solver, spec, &mut norm_sq, &problem.a))
            .max_iterations(budget)
            .tolerance(spec.tol)
            .stop_rule(StopRule::RelativeError);
        let kernel = kernels[e].as_ref().filter(|_| solver.algorithm.uses_newton_direction());
        let result = solve_with_kernel(&problem, &config, kernel)?;
        out.push(match result.trace.status {
            Status::Converged => Outcome {
                converged_at: Some(result.iterations_used),
                failed_at: None,
            },
            Status::NumericFailure => Outcome {
                converged_at: None,
                failed_at: Some(result.iterations_used + 1),
            },
            Status::BudgetExhausted => Outcome {
                converged_at: None,
                failed_at: None,
            },
        });
    }
    Ok(out)
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .context("building worker pool")
}

/// Runs every (problem cell, trial) unit and aggregates per cell and budget.
///
/// Each problem is generated once and shared by all solver settings, and all
/// budgets are read off a single run at the largest budget: a run stopped at
/// budget `b` is a prefix of the longer run. `workers = 0` uses the default
/// thread count. Output is independent of `workers`.
pub fn run_grid(spec: &ExperimentSpec, workers: usize) -> Result<Vec<CellRecord>> {
    spec.validate()?;
    let cells = spec.problem_cells();
    let units: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..spec.trials).map(move |t| (c, t)))
        .collect();
    let outcomes: Vec<Vec<Outcome>> = pool(workers)?.install(|| {
        units
            .par_iter()
            .map(|&(c, t)| run_trial(spec, cells[c], t))
            .collect::<Result<_>>()
    })?;

    let solvers = spec.solver_cells();
    let mut records = Vec::with_capacity(cells.len() * solvers.len() * spec.iters.len());
    for (c, cell) in cells.iter().enumerate() {
        let trials = &outcomes[c * spec.trials..(c + 1) * spec.trials];
        for (s, solver) in solvers.iter().enumerate() {
            for &budget in &spec.iters {
                let mut successes = 0;
                let mut iteration_sum = 0usize;
                let mut failures = 0;
                for o in trials.iter().map(|t| t[s]) {
                    if let Some(p) = o.converged_at.filter(|&p| p <= budget) {
                        successes += 1;
                        iteration_sum += p;
                    }
                    if o.failed_at.is_some_and(|p| p <= budget) {
                        failures += 1;
                    }
                }
                records.push(CellRecord {
                    m: cell.m,
                    n: cell.n,
                    k: cell.k,
                    algorithm: solver.algorithm,
                    epsilon: solver.epsilon,
                    lambda: solver.lambda,
                    iters: budget,
                    trials: spec.trials,
                    successes,
                    rate: successes as f64 / spec.trials as f64,
                    mean_iters_success: (successes > 0).then(|| iteration_sum as f64 / successes as f64),
                    failures_numeric: failures,
                });
            }
        }
    }
    Ok(records)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow {
    pub algorithm: Algorithm,
    pub iteration: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceSummary {
    pub algorithm: Algorithm,
    pub status: Status,
    pub iterations: usize,
    pub final_residual: f64,
    pub relative_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceReport {
    pub problem: Option<ProblemDescriptor>,
    pub rows: Vec<TraceRow>,
    pub summaries: Vec<TraceSummary>,
}

/// Residual trace of the spec's single problem instance.
pub fn run_trace(spec: &ExperimentSpec) -> Result<TraceReport> {
    spec.validate()?;
    let cell = spec.problem_cells()[0];
    let problem: Problem = descriptor(spec, cell, 0).generate()?;
    run_trace_on(&problem, spec)
}

/// Every algorithm from the zero vector on the same problem, until
/// `‖y − Axᵖ‖₂ ≤ tol·‖y‖₂` or the budget runs out. A numeric failure ends
/// that algorithm's rows with a NaN residual.
pub fn run_trace_on(problem: &Problem, spec: &ExperimentSpec) -> Result<TraceReport> {
    let epsilon = spec.epsilon[0];
    let lambda = spec.lambda[0];
    let kernel = RegularizedKernel::new(&problem.a, epsilon)?;
    let tolerance = spec.tol * problem.y.norm2();
    let mut norm_sq = None;
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for &algorithm in &spec.algo {
        let cell = SolverCell { algorithm, epsilon, lambda };
        let config = Config::new(algorithm, problem.k)
            .epsilon(epsilon)
            .lambda(step_for(&cell, spec, &mut norm_sq, &problem.a))
            .max_iterations(spec.iters[0])
            .tolerance(tolerance)
            .stop_rule(StopRule::ResidualNorm);
        let kernel = algorithm.uses_newton_direction().then_some(&kernel);
        let result = solve_with_kernel(problem, &config, kernel)?;
        for r in &result.trace.records {
            rows.push(TraceRow {
                algorithm,
                iteration: r.iteration,
                residual: r.residual,
            });
        }
        if result.trace.status == Status::NumericFailure {
            rows.push(TraceRow {
                algorithm,
                iteration: result.iterations_used + 1,
                residual: f64::NAN,
            });
        }
        let last = result.trace.records.last().expect("trace has the initial point");
        summaries.push(TraceSummary {
            algorithm,
            status: result.trace.status,
            iterations: result.iterations_used,
            final_residual: last.residual,
            relative_error: last.relative_error,
            failure: result.trace.failure.as_ref().map(|e| e.to_string()),
        });
    }
    Ok(TraceReport {
        problem: problem.descriptor.clone(),
        rows,
        summaries,
    })
}
