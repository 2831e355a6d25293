//! NSIHT, NSHTP and the classical IHT/HTP baselines.
//!
//! All four share one iteration shape: form `u = x + λ d(x)` for a search
//! direction `d`, threshold to `k` entries, and (for the pursuit variants)
//! refit by least squares on the selected support. The Newton variants use
//! `d = (AᵀA + εI)⁻¹ Aᵀ (y − Ax)`; the baselines use the gradient `Aᵀ (y − Ax)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::linalg::{least_squares_on_support, DenseMatrix, DenseVector, RegularizedKernel};
use crate::scalar::{cast, Scalar};
use crate::threshold::{hard_threshold, SparseVector, SupportSet};

/// Consecutive unchanged supports required by [`StopRule::SupportStable`].
pub const SUPPORT_STABLE_ITERATIONS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Nsiht,
    Nshtp,
    Iht,
    Htp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Nsiht, Algorithm::Nshtp, Algorithm::Iht, Algorithm::Htp];

    /// Whether the search direction is the regularized Newton direction.
    pub fn uses_newton_direction(self) -> bool {
        matches!(self, Algorithm::Nsiht | Algorithm::Nshtp)
    }

    pub fn uses_pursuit(self) -> bool {
        matches!(self, Algorithm::Nshtp | Algorithm::Htp)
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Nsiht => "nsiht",
            Algorithm::Nshtp => "nshtp",
            Algorithm::Iht => "iht",
            Algorithm::Htp => "htp",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nsiht" => Ok(Algorithm::Nsiht),
            "nshtp" => Ok(Algorithm::Nshtp),
            "iht" => Ok(Algorithm::Iht),
            "htp" => Ok(Algorithm::Htp),
            other => Err(Error::InvalidInput(format!("unknown algorithm '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopRule {
    /// `‖xᵖ − x*‖₂ / ‖x*‖₂ ≤ tolerance`; needs ground truth.
    #[default]
    RelativeError,
    /// `‖y − Axᵖ‖₂ ≤ tolerance`.
    ResidualNorm,
    /// Support unchanged for [`SUPPORT_STABLE_ITERATIONS`] consecutive iterations.
    SupportStable,
    /// Always run `max_iterations` iterations.
    IterationBudget,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig<T> {
    pub algorithm: Algorithm,
    pub k: usize,
    /// Regularization ε; ignored by IHT and HTP.
    pub epsilon: T,
    pub lambda: T,
    pub max_iterations: usize,
    pub tolerance: T,
    pub stop_rule: StopRule,
    /// Starting point; zero when `None`.
    pub initial: Option<SparseVector<T>>,
    /// Keep the pre-threshold vector `u = xᵖ + λ d` in every record.
    pub verbose: bool,
}

impl<T: Scalar> SolverConfig<T> {
    /// Defaults: ε = λ = 1, 50 iterations, relative-error stop at 1e-3, zero start.
    pub fn new(algorithm: Algorithm, k: usize) -> Self {
        Self {
            algorithm,
            k,
            epsilon: T::one(),
            lambda: T::one(),
            max_iterations: 50,
            tolerance: cast(1e-3),
            stop_rule: StopRule::RelativeError,
            initial: None,
            verbose: false,
        }
    }

    pub fn epsilon(mut self, epsilon: T) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn lambda(mut self, lambda: T) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn max_iterations(mut self, max_iterations: usize) -> Self {
        self.max_iterations = max_iterations;
        self
    }

    pub fn tolerance(mut self, tolerance: T) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn stop_rule(mut self, stop_rule: StopRule) -> Self {
        self.stop_rule = stop_rule;
        self
    }

    pub fn initial(mut self, initial: SparseVector<T>) -> Self {
        self.initial = Some(initial);
        self
    }

    pub fn verbose(mut self, verbose: bool) -> Self {
        self.verbose = verbose;
        self
    }

    pub fn validate(&self, problem_n: usize, has_truth: bool) -> Result<()> {
        if self.k == 0 || self.k > problem_n {
            return Err(Error::InvalidInput(format!(
                "sparsity level must satisfy 1 <= k <= n, got k={}",
                self.k
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidInput("max_iterations must be >= 1".into()));
        }
        if !(self.tolerance >= T::zero()) {
            return Err(Error::InvalidInput("tolerance must be non-negative".into()));
        }
        if !(self.lambda > T::zero()) || !self.lambda.is_finite() {
            return Err(Error::InvalidInput("lambda must be positive".into()));
        }
        if self.algorithm.uses_newton_direction() && (!(self.epsilon > T::zero()) || !self.epsilon.is_finite()) {
            return Err(Error::InvalidInput("epsilon must be positive".into()));
        }
        if self.stop_rule == StopRule::RelativeError && !has_truth {
            return Err(Error::InvalidInput(
                "relative-error stop rule needs a ground-truth signal".into(),
            ));
        }
        if let Some(x0) = &self.initial {
            check_len("initial point", problem_n, x0.ambient_len())?;
            if x0.nnz() > self.k {
                return Err(Error::InvalidInput("initial point is not k-sparse".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Converged,
    BudgetExhausted,
    NumericFailure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord<T> {
    pub iteration: usize,
    pub iterate: SparseVector<T>,
    /// Thresholded point `x̄ᵖ` before the pursuit refit (pursuit variants only).
    pub intermediate: Option<SparseVector<T>>,
    /// Pre-threshold vector, kept only in verbose traces.
    pub pre_threshold: Option<DenseVector<T>>,
    pub residual: T,
    pub relative_error: Option<T>,
}

impl<T: Scalar> IterationRecord<T> {
    pub fn support(&self) -> &SupportSet {
        self.iterate.support()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<T> {
    pub records: Vec<IterationRecord<T>>,
    pub status: Status,
    /// Cause of a numeric failure.
    pub failure: Option<Error>,
}

impl<T: Scalar> IterationTrace<T> {
    pub fn residuals(&self) -> Vec<T> {
        self.records.iter().map(|r| r.residual).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult<T> {
    pub final_iterate: SparseVector<T>,
    pub trace: IterationTrace<T>,
    pub iterations_used: usize,
    pub success: bool,
}

/// Search direction at a residual `r = y − Ax`.
enum Direction<'k, 'a, T> {
    Newton(&'k RegularizedKernel<'a, T>),
    Gradient(&'a DenseMatrix<T>),
}

impl<T: Scalar> Direction<'_, '_, T> {
    fn at(&self, r: &DenseVector<T>) -> Result<DenseVector<T>> {
        match self {
            Direction::Newton(kernel) => kernel.apply(r),
            Direction::Gradient(a) => a.mul_vec_transposed(r),
        }
    }

    fn matrix(&self) -> &DenseMatrix<T> {
        match self {
            Direction::Newton(kernel) => kernel.source(),
            Direction::Gradient(a) => a,
        }
    }
}

/// Returns `(u, H_k(u))` with `u = x + λ d(y − Ax)`.
fn threshold_step<T: Scalar>(
    direction: &Direction<'_, '_, T>,
    y: &DenseVector<T>,
    x: &SparseVector<T>,
    k: usize,
    lambda: T,
) -> Result<(DenseVector<T>, SparseVector<T>)> {
    let a = direction.matrix();
    check_len("step measurements", a.rows(), y.len())?;
    check_len("step iterate", a.cols(), x.ambient_len())?;
    let r = y.sub(&a.mul_sparse(x.support().indices(), x.values()))?;
    let d = direction.at(&r)?;
    let mut u = d.scaled(lambda);
    for (i, v) in x.iter() {
        u[i] = u[i] + v;
    }
    if !u.is_finite() {
        return Err(Error::NonFinite("iteration"));
    }
    let next = hard_threshold(&u, k)?;
    Ok((u, next))
}

fn pursuit<T: Scalar>(
    a: &DenseMatrix<T>,
    y: &DenseVector<T>,
    thresholded: &SparseVector<T>,
) -> Result<SparseVector<T>> {
    least_squares_on_support(a, y, thresholded.support())
}

/// One NSIHT iteration: `H_k(xᵖ + λ (AᵀA + εI)⁻¹ Aᵀ (y − Axᵖ))`.
pub fn nsiht_step<T: Scalar>(
    kernel: &RegularizedKernel<'_, T>,
    y: &DenseVector<T>,
    x: &SparseVector<T>,
    k: usize,
    lambda: T,
) -> Result<SparseVector<T>> {
    Ok(threshold_step(&Direction::Newton(kernel), y, x, k, lambda)?.1)
}

/// One NSHTP iteration; returns `(x̄ᵖ, xᵖ⁺¹)`.
pub fn nshtp_step<T: Scalar>(
    kernel: &RegularizedKernel<'_, T>,
    y: &DenseVector<T>,
    x: &SparseVector<T>,
    k: usize,
    lambda: T,
) -> Result<(SparseVector<T>, SparseVector<T>)> {
    let bar = nsiht_step(kernel, y, x, k, lambda)?;
    let next = pursuit(kernel.source(), y, &bar)?;
    Ok((bar, next))
}

/// One IHT iteration: `H_k(xᵖ + λ Aᵀ (y − Axᵖ))`.
pub fn iht_step<T: Scalar>(
    a: &DenseMatrix<T>,
    y: &DenseVector<T>,
    x: &SparseVector<T>,
    k: usize,
    lambda: T,
) -> Result<SparseVector<T>> {
    Ok(threshold_step(&Direction::Gradient(a), y, x, k, lambda)?.1)
}

/// One HTP iteration; returns `(x̄ᵖ, xᵖ⁺¹)`.
pub fn htp_step<T: Scalar>(
    a: &DenseMatrix<T>,
    y: &DenseVector<T>,
    x: &SparseVector<T>,
    k: usize,
    lambda: T,
) -> Result<(SparseVector<T>, SparseVector<T>)> {
    let bar = iht_step(a, y, x, k, lambda)?;
    let next = pursuit(a, y, &bar)?;
    Ok((bar, next))
}

/// Runs `config.algorithm` on `(a, y)` from the configured starting point.
///
/// Only invalid configurations are reported as `Err`; numeric trouble during
/// the iteration ends the run with [`Status::NumericFailure`].
pub fn solve<T: Scalar>(
    problem: &crate::problem::SparseProblem<T>,
    config: &SolverConfig<T>,
) -> Result<RecoveryResult<T>> {
    let kernel = if config.algorithm.uses_newton_direction() {
        Some(RegularizedKernel::new(&problem.a, config.epsilon)?)
    } else {
        None
    };
    solve_with_kernel(problem, config, kernel.as_ref())
}

/// As [`solve`], reusing a prebuilt kernel for the Newton variants.
pub fn solve_with_kernel<T: Scalar>(
    problem: &crate::problem::SparseProblem<T>,
    config: &SolverConfig<T>,
    kernel: Option<&RegularizedKernel<'_, T>>,
) -> Result<RecoveryResult<T>> {
    let a = &problem.a;
    let y = &problem.y;
    let truth = problem.truth.as_ref();
    config.validate(a.cols(), truth.is_some())?;
    check_len("problem measurements", a.rows(), y.len())?;
    if let Some(t) = truth {
        check_len("ground truth", a.cols(), t.ambient_len())?;
    }

    let direction = if config.algorithm.uses_newton_direction() {
        let kernel = kernel.ok_or_else(|| Error::InvalidInput("Newton solver needs a kernel".into()))?;
        if !std::ptr::eq(kernel.source(), a) && kernel.source() != a {
            return Err(Error::InvalidInput("kernel was built from a different matrix".into()));
        }
        if kernel.epsilon() != config.epsilon {
            return Err(Error::InvalidInput("kernel epsilon differs from config".into()));
        }
        Direction::Newton(kernel)
    } else {
        Direction::Gradient(a)
    };

    let truth_norm = truth.map(SparseVector::norm2);
    let relative_error = |x: &SparseVector<T>| {
        truth.zip(truth_norm).map(|(t, norm)| {
            let d = x.distance(t);
            if norm > T::zero() {
                d / norm
            } else {
                d
            }
        })
    };
    let residual_of = |x: &SparseVector<T>| {
        y.sub(&a.mul_sparse(x.support().indices(), x.values()))
            .map(|r| r.norm2())
    };

    let mut x = config
        .initial
        .clone()
        .unwrap_or_else(|| SparseVector::zeros(a.cols()));
    let mut records = Vec::with_capacity(config.max_iterations.min(1024) + 1);
    let r0 = residual_of(&x)?;
    records.push(IterationRecord {
        iteration: 0,
        relative_error: relative_error(&x),
        iterate: x.clone(),
        intermediate: None,
        pre_threshold: None,
        residual: r0,
    });

    let mut stable_count = 0usize;
    let stop = |record: &IterationRecord<T>, stable: usize| match config.stop_rule {
        StopRule::RelativeError => record
            .relative_error
            .is_some_and(|e| e <= config.tolerance),
        StopRule::ResidualNorm => record.residual <= config.tolerance,
        StopRule::SupportStable => stable >= SUPPORT_STABLE_ITERATIONS,
        StopRule::IterationBudget => false,
    };

    let finish = |records: Vec<IterationRecord<T>>, status: Status, failure: Option<Error>| {
        let last = records.last().expect("trace has the initial point");
        let final_iterate = last.iterate.clone();
        let iterations_used = last.iteration;
        let success = match status {
            Status::Converged => true,
            Status::BudgetExhausted => config.stop_rule == StopRule::IterationBudget,
            Status::NumericFailure => false,
        };
        RecoveryResult {
            final_iterate,
            trace: IterationTrace {
                records,
                status,
                failure,
            },
            iterations_used,
            success,
        }
    };

    if !r0.is_finite() {
        return Ok(finish(records, Status::NumericFailure, Some(Error::NonFinite("residual"))));
    }
    if stop(&records[0], stable_count) {
        return Ok(finish(records, Status::Converged, None));
    }

    for iteration in 1..=config.max_iterations {
        let step = threshold_step(&direction, y, &x, config.k, config.lambda).and_then(|(u, bar)| {
            if config.algorithm.uses_pursuit() {
                let next = pursuit(a, y, &bar)?;
                Ok((u, Some(bar), next))
            } else {
                Ok((u, None, bar))
            }
        });
        let (u, intermediate, next) = match step {
            Ok(s) => s,
            Err(e) => return Ok(finish(records, Status::NumericFailure, Some(e))),
        };
        let residual = residual_of(&next)?;
        if !residual.is_finite() {
            return Ok(finish(records, Status::NumericFailure, Some(Error::NonFinite("residual"))));
        }
        if next.support() == x.support() {
            stable_count += 1;
        } else {
            stable_count = 0;
        }
        let record = IterationRecord {
            iteration,
            relative_error: relative_error(&next),
            iterate: next.clone(),
            intermediate,
            pre_threshold: config.verbose.then_some(u),
            residual,
        };
        let done = stop(&record, stable_count);
        records.push(record);
        x = next;
        if done {
            return Ok(finish(records, Status::Converged, None));
        }
    }
    Ok(finish(records, Status::BudgetExhausted, None))
}
