//! Experiment specifications, presets and overrides.

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, ValueEnum};
use nsht::Algorithm;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    ResidualTrace,
    PhaseTransition,
    ParameterSweep,
    NoisyRecovery,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    #[default]
    Desk,
    Paper,
}

/// A full experiment description. Serialized form is the config-file schema.
///
/// `mnratio`, when nonempty, replaces `m` by `round(ratio · n)`; `knratio_grid`
/// is used only when `k` is empty, with `k = max(1, round(ratio · n))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub n: usize,
    pub m: Vec<usize>,
    #[serde(default)]
    pub mnratio: Vec<f64>,
    #[serde(default)]
    pub k: Vec<usize>,
    #[serde(default)]
    pub knratio_grid: Vec<f64>,
    pub algo: Vec<Algorithm>,
    pub epsilon: Vec<f64>,
    pub lambda: Vec<f64>,
    /// Stepsize of the gradient baselines, in units of `1/‖A‖₂²`.
    #[serde(default = "one")]
    pub baseline_lambda: f64,
    pub trials: usize,
    pub iters: Vec<usize>,
    /// Relative-error tolerance for grids; relative-residual tolerance for traces.
    pub tol: f64,
    pub seed: u64,
    #[serde(default)]
    pub noise_scale: f64,
    #[serde(default)]
    pub noise_norm: bool,
}

fn one() -> f64 {
    1.0
}

pub const DEFAULT_SEED: u64 = 20_210_305;

fn desk_knratio_grid() -> Vec<f64> {
    (1..=8).map(|i| i as f64 * 0.05).collect()
}

impl ExperimentSpec {
    pub fn preset(kind: ExperimentKind, preset: Preset) -> Self {
        let (n, m, mnratio, trials) = match preset {
            Preset::Desk => (200, vec![100], vec![], 100),
            Preset::Paper => (1000, vec![500], vec![0.5, 0.4, 0.3], 250),
        };
        let mut spec = ExperimentSpec {
            kind,
            n,
            m,
            mnratio,
            k: vec![],
            knratio_grid: desk_knratio_grid(),
            algo: vec![Algorithm::Nsiht, Algorithm::Nshtp],
            epsilon: vec![1.0],
            lambda: vec![1.0],
            baseline_lambda: 1.0,
            trials,
            iters: vec![20, 50],
            tol: 1e-3,
            seed: DEFAULT_SEED,
            noise_scale: 0.0,
            noise_norm: false,
        };
        match kind {
            ExperimentKind::ResidualTrace => {
                spec.mnratio.clear();
                spec.k = vec![match preset {
                    Preset::Desk => 30,
                    Preset::Paper => 150,
                }];
                spec.knratio_grid.clear();
                spec.algo = vec![Algorithm::Htp, Algorithm::Nsiht, Algorithm::Nshtp];
                spec.trials = 1;
                spec.iters = vec![100];
                spec.tol = 1e-12;
            }
            ExperimentKind::PhaseTransition => {}
            ExperimentKind::ParameterSweep => {
                spec.epsilon = vec![1.0, 2.0];
                spec.lambda = vec![1.0, 2.0];
                spec.iters = vec![20];
            }
            ExperimentKind::NoisyRecovery => {
                spec.noise_scale = 1e-3;
                spec.iters = vec![50];
            }
        }
        spec
    }

    /// Preset, then config file, then flags.
    pub fn resolve(
        kind: ExperimentKind,
        preset: Preset,
        config: Option<&Path>,
        flags: &SpecOverrides,
    ) -> Result<Self> {
        let mut spec = Self::preset(kind, preset);
        if let Some(path) = config {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            let file: SpecOverrides = serde_json::from_str(&text)
                .with_context(|| format!("parsing config {}", path.display()))?;
            if let Some(k) = file.kind {
                ensure!(k == kind, "config is for {k:?}, command runs {kind:?}");
            }
            file.apply(&mut spec);
        }
        flags.apply(&mut spec);
        spec.validate()?;
        Ok(spec)
    }

    pub fn ms(&self) -> Vec<usize> {
        if self.mnratio.is_empty() {
            self.m.clone()
        } else {
            self.mnratio
                .iter()
                .map(|r| (r * self.n as f64).round() as usize)
                .collect()
        }
    }

    pub fn ks(&self) -> Vec<usize> {
        if self.k.is_empty() {
            self.knratio_grid
                .iter()
                .map(|r| ((r * self.n as f64).round() as usize).max(1))
                .collect()
        } else {
            self.k.clone()
        }
    }

    pub fn problem_cells(&self) -> Vec<ProblemCell> {
        let ks = self.ks();
        self.ms()
            .into_iter()
            .flat_map(|m| {
                ks.iter().map(move |&k| ProblemCell {
                    m,
                    n: self.n,
                    k,
                })
            })
            .collect()
    }

    /// Solver settings in output order; iteration budgets are expanded at aggregation.
    pub fn solver_cells(&self) -> Vec<SolverCell> {
        let mut cells = Vec::new();
        for &algorithm in &self.algo {
            for &epsilon in &self.epsilon {
                for &lambda in &self.lambda {
                    cells.push(SolverCell {
                        algorithm,
                        epsilon,
                        lambda,
                    });
                }
            }
        }
        cells
    }

    pub fn max_iters(&self) -> usize {
        self.iters.iter().copied().max().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.trials >= 1, "trials must be at least 1");
        ensure!(self.n >= 1, "n must be positive");
        ensure!(!self.algo.is_empty(), "algorithm list is empty");
        ensure!(!self.epsilon.is_empty() && !self.lambda.is_empty(), "parameter grid is empty");
        ensure!(!self.iters.is_empty(), "iteration budget list is empty");
        ensure!(self.tol > 0.0 && self.tol.is_finite(), "tolerance must be positive");
        ensure!(
            self.baseline_lambda > 0.0 && self.baseline_lambda.is_finite(),
            "baseline stepsize must be positive"
        );
        ensure!(
            self.noise_scale >= 0.0 && self.noise_scale.is_finite(),
            "noise scale must be non-negative"
        );
        for &e in &self.epsilon {
            ensure!(e > 0.0 && e.is_finite(), "epsilon must be positive, got {e}");
        }
        for &l in &self.lambda {
            ensure!(l > 0.0 && l.is_finite(), "lambda must be positive, got {l}");
        }
        for &r in self.mnratio.iter().chain(&self.knratio_grid) {
            ensure!(r > 0.0 && r.is_finite(), "ratios must be positive, got {r}");
        }
        let ms = self.ms();
        let ks = self.ks();
        ensure!(!ms.is_empty(), "no measurement counts in the grid");
        ensure!(!ks.is_empty(), "no sparsity levels in the grid");
        for &m in &ms {
            ensure!(m >= 1, "m must be positive");
        }
        for &k in &ks {
            ensure!(k >= 1 && k < self.n, "every cell needs 1 <= k < n, got k={k}, n={}", self.n);
        }
        match self.kind {
            ExperimentKind::NoisyRecovery => {
                ensure!(self.noise_scale > 0.0, "noisy recovery needs a positive noise scale")
            }
            ExperimentKind::ResidualTrace => {
                if ms.len() != 1 || ks.len() != 1 || self.epsilon.len() != 1 || self.lambda.len() != 1 {
                    bail!("a residual trace takes a single (m, k, epsilon, lambda)");
                }
                ensure!(self.iters.len() == 1, "a residual trace takes a single iteration budget");
            }
            _ => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ProblemCell {
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverCell {
    pub algorithm: Algorithm,
    pub epsilon: f64,
    pub lambda: f64,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: nsht::Error| e.to_string())
}

/// Partial spec, shared by config files and command-line flags. List flags
/// take comma-separated values.
#[derive(Debug, Clone, Default, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct SpecOverrides {
    /// Checked against the command in config files.
    #[arg(skip)]
    pub kind: Option<ExperimentKind>,
    /// Measurement counts.
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<usize>>,
    /// Signal length.
    #[arg(long)]
    pub n: Option<usize>,
    /// Sparsity levels; overrides --knratio-grid.
    #[arg(long, value_delimiter = ',')]
    pub k: Option<Vec<usize>>,
    /// Sparsity ratios k/n.
    #[arg(long, value_delimiter = ',')]
    pub knratio_grid: Option<Vec<f64>>,
    /// Measurement ratios m/n; overrides --m.
    #[arg(long, value_delimiter = ',')]
    pub mnratio: Option<Vec<f64>>,
    /// Algorithms: nsiht, nshtp, iht, htp.
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
    pub algo: Option<Vec<Algorithm>>,
    /// Regularization values ε.
    #[arg(long, value_delimiter = ',')]
    pub epsilon: Option<Vec<f64>>,
    /// Newton stepsizes λ.
    #[arg(long, value_delimiter = ',')]
    pub lambda: Option<Vec<f64>>,
    /// Stepsize of IHT/HTP in units of 1/‖A‖₂².
    #[arg(long)]
    pub baseline_lambda: Option<f64>,
    /// Problems per cell.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Iteration budgets.
    #[arg(long, value_delimiter = ',')]
    pub iters: Option<Vec<usize>>,
    /// Relative-error tolerance (relative residual for traces).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Standard deviation of the measurement noise.
    #[arg(long)]
    pub noise_scale: Option<f64>,
    /// Rescale the noise to ‖e‖₂ = noise-scale.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub noise_norm: Option<bool>,
}

impl SpecOverrides {
    pub fn apply(&self, spec: &mut ExperimentSpec) {
        if let Some(m) = &self.m {
            spec.m = m.clone();
            spec.mnratio.clear();
        }
        if let Some(r) = &self.mnratio {
            spec.mnratio = r.clone();
        }
        if let Some(n) = self.n {
            spec.n = n;
        }
        if let Some(k) = &self.k {
            spec.k = k.clone();
        }
        if let Some(r) = &self.knratio_grid {
            spec.knratio_grid = r.clone();
            if self.k.is_none() {
                spec.k.clear();
            }
        }
        macro_rules! copy {
            ($($field:ident),*) => {
                $(if let Some(v) = &self.$field {
                    spec.$field = v.clone();
                })*
            };
        }
        copy!(algo, epsilon, lambda, baseline_lambda, trials, iters, tol, seed, noise_scale, noise_norm);
    }
}
