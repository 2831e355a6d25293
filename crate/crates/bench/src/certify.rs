//! Parameter windows and convergence certificates for a concrete matrix.

use anyhow::{bail, Result};
use nsht::ric::{delta_threshold, ParameterAdvice, Violation, DEFAULT_ENUMERATION_BUDGET};
use nsht::{advise_nshtp, advise_nsiht, certify, singular_values, Algorithm, Error, Matrix, ParameterWindow, RicProfile};
use serde::Serialize;

#[derive(Debug, Clone, Default)]
pub struct SuppliedDeltas {
    pub delta_k: Option<f64>,
    pub delta_2k: Option<f64>,
    pub delta_3k: Option<f64>,
}

impl SuppliedDeltas {
    pub fn any(&self) -> bool {
        self.delta_k.is_some() || self.delta_2k.is_some() || self.delta_3k.is_some()
    }

    /// Missing lower orders default to the next supplied higher one, which
    /// bounds them from above since `δ_k ≤ δ_2k ≤ δ_3k`.
    fn profile(&self) -> Result<RicProfile<f64>> {
        let Some(delta_3k) = self.delta_3k else {
            bail!("supplied constants must include --delta3k");
        };
        let delta_2k = self.delta_2k.unwrap_or(delta_3k);
        let delta_k = self.delta_k.unwrap_or(delta_2k);
        Ok(RicProfile { delta_k, delta_2k, delta_3k })
    }
}

#[derive(Debug, Clone)]
pub struct CertifyRequest {
    pub matrix: Matrix,
    pub source: String,
    pub k: usize,
    pub algorithms: Vec<Algorithm>,
    pub epsilon: Option<f64>,
    pub lambda: Option<f64>,
    pub deltas: SuppliedDeltas,
    pub budget: u128,
}

impl CertifyRequest {
    pub fn new(matrix: Matrix, source: impl Into<String>, k: usize) -> Self {
        Self {
            matrix,
            source: source.into(),
            k,
            algorithms: vec![Algorithm::Nsiht, Algorithm::Nshtp],
            epsilon: None,
            lambda: None,
            deltas: SuppliedDeltas::default(),
            budget: DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatrixInfo {
    pub m: usize,
    pub n: usize,
    pub source: String,
    pub sigma_max: f64,
    pub sigma_min: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaInfo {
    pub delta_k: f64,
    pub delta_2k: f64,
    pub delta_3k: f64,
    /// `exact` or `supplied`.
    pub source: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Pass,
    Fail,
    NotEvaluated,
}

#[derive(Debug, Clone, Serialize)]
pub struct Hypothesis {
    pub name: &'static str,
    pub result: Check,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgorithmReport {
    pub algorithm: Algorithm,
    pub threshold: Option<f64>,
    pub epsilon: f64,
    pub lambda: f64,
    /// `supplied`, `advised`, or `default` when no admissible pair exists.
    pub parameters: &'static str,
    pub epsilon_lower: Option<f64>,
    pub window: Option<ParameterWindow<f64>>,
    pub hypotheses: Vec<Hypothesis>,
    pub certified: bool,
    pub rho: Option<f64>,
    pub tau: Option<f64>,
    pub violations: Vec<Violation<f64>>,
    pub summary: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyReport {
    pub k: usize,
    pub matrix: MatrixInfo,
    pub deltas: DeltaInfo,
    pub results: Vec<AlgorithmReport>,
}

fn advice_for(algorithm: Algorithm, spectrum: &nsht::Spectrum<f64>, delta_3k: f64) -> Option<ParameterAdvice<f64>> {
    match algorithm {
        Algorithm::Nsiht => Some(advise_nsiht(spectrum, delta_3k)),
        Algorithm::Nshtp => Some(advise_nshtp(spectrum, delta_3k)),
        Algorithm::Iht | Algorithm::Htp => None,
    }
}

pub fn run_certify(req: &CertifyRequest) -> Result<CertifyReport> {
    if req.k == 0 || req.k > req.matrix.cols() {
        bail!("sparsity k = {} must lie in [1, n = {}]", req.k, req.matrix.cols());
    }
    let spectrum = singular_values(&req.matrix)?;
    let (deltas, source) = if req.deltas.any() {
        (req.deltas.profile()?, "supplied")
    } else {
        match RicProfile::exact(&req.matrix, req.k, req.budget) {
            Ok(p) => (p, "exact"),
            Err(Error::BudgetExceeded { order, subsets, budget }) => bail!(
                "exact delta_{order} needs {subsets} subsets (budget {budget}); pass --delta3k (and optionally --delta2k, --deltak) instead"
            ),
            Err(e) => return Err(e.into()),
        }
    };

    let mut results = Vec::new();
    for &algorithm in &req.algorithms {
        let advice = advice_for(algorithm, &spectrum, deltas.delta_3k);
        let (epsilon, lambda, parameters) = match (req.epsilon, req.lambda) {
            (Some(e), Some(l)) => (e, l, "supplied"),
            (Some(e), None) => match advice.as_ref().map(|a| a.window(e)).filter(|w| w.feasible) {
                Some(w) => (e, w.lambda_upper, "advised"),
                None => (e, 1.0, "default"),
            },
            (None, lambda) => match advice.as_ref().and_then(|a| a.suggest()) {
                Some((e, l)) => (e, lambda.unwrap_or(l), "advised"),
                None => (1.0, lambda.unwrap_or(1.0), "default"),
            },
        };
        let window = advice.as_ref().filter(|a| a.feasible).map(|a| a.window(epsilon));
        let outcome = certify(algorithm, &spectrum, deltas, epsilon, lambda);
        let violations = match &outcome {
            Ok(_) => Vec::new(),
            Err(r) => r.violations.clone(),
        };
        let failed = |pred: fn(&Violation<f64>) -> bool| violations.iter().any(pred);
        let early = advice.as_ref().is_none_or(|a| !a.feasible);
        let status = |fail: bool, evaluated: bool| match (evaluated, fail) {
            (false, _) => Check::NotEvaluated,
            (true, true) => Check::Fail,
            (true, false) => Check::Pass,
        };
        let eps_fail = failed(|v| matches!(v, Violation::EpsilonTooSmall { .. }));
        let hypotheses = vec![
            Hypothesis {
                name: "delta_3k_below_threshold",
                result: status(
                    failed(|v| matches!(v, Violation::DeltaAboveThreshold { .. } | Violation::UnsupportedAlgorithm { .. })),
                    true,
                ),
            },
            Hypothesis {
                name: "deltas_ordered",
                result: status(failed(|v| matches!(v, Violation::DeltasNotOrdered { .. })), true),
            },
            Hypothesis {
                name: "epsilon_above_lower_bound",
                result: status(eps_fail, !early),
            },
            Hypothesis {
                name: "lambda_above_lower_bound",
                result: status(failed(|v| matches!(v, Violation::LambdaTooSmall { .. })), !early && !eps_fail),
            },
            Hypothesis {
                name: "lambda_within_upper_bound",
                result: status(failed(|v| matches!(v, Violation::LambdaTooLarge { .. })), !early && !eps_fail),
            },
            Hypothesis {
                name: "rho_below_one",
                result: status(failed(|v| matches!(v, Violation::NotContracting { .. } | Violation::NonFinite)), !early),
            },
        ];
        let summary = match &outcome {
            Ok(c) => format!("{algorithm} certified: rho = {}, tau = {}", c.rho, c.tau),
            Err(r) => r.to_string(),
        };
        results.push(AlgorithmReport {
            algorithm,
            threshold: delta_threshold::<f64>(algorithm),
            epsilon,
            lambda,
            parameters,
            epsilon_lower: advice.as_ref().filter(|a| a.feasible).map(|a| a.epsilon_lower),
            window,
            hypotheses,
            certified: outcome.is_ok(),
            rho: outcome.as_ref().ok().map(|c| c.rho),
            tau: outcome.as_ref().ok().map(|c| c.tau),
            violations,
            summary,
        });
    }
    Ok(CertifyReport {
        k: req.k,
        matrix: MatrixInfo {
            m: req.matrix.rows(),
            n: req.matrix.cols(),
            source: req.source.clone(),
            sigma_max: spectrum.sigma_max(),
            sigma_min: spectrum.sigma_min(),
        },
        deltas: DeltaInfo {
            delta_k: deltas.delta_k,
            delta_2k: deltas.delta_2k,
            delta_3k: deltas.delta_3k,
            source,
        },
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(req: &CertifyRequest, alg: Algorithm) -> AlgorithmReport {
        run_certify(req).unwrap().results.into_iter().find(|r| r.algorithm == alg).unwrap()
    }

    #[test]
    fn orthogonal_square_matrix_certifies_with_zero_rho() {
        let mut req = CertifyRequest::new(Matrix::identity(4), "identity", 1);
        req.epsilon = Some(2.0);
        req.lambda = Some(3.0);
        for alg in [Algorithm::Nsiht, Algorithm::Nshtp] {
            let r = report(&req, alg);
            assert!(r.certified, "{}", r.summary);
            assert_eq!(r.rho, Some(0.0));
            assert!(r.hypotheses.iter().all(|h| h.result == Check::Pass));
        }
    }

    #[test]
    fn supplied_deltas_hit_the_thresholds() {
        let mut req = CertifyRequest::new(Matrix::identity(4), "identity", 1);
        req.deltas.delta_3k = Some(0.6);
        assert!(!report(&req, Algorithm::Nsiht).certified);
        assert!(!report(&req, Algorithm::Nshtp).certified);
        req.deltas.delta_3k = Some(0.55);
        let nsiht = report(&req, Algorithm::Nsiht);
        let nshtp = report(&req, Algorithm::Nshtp);
        assert!(nsiht.window.as_ref().unwrap().feasible);
        assert!(nshtp.window.is_none());
        assert_eq!(nshtp.hypotheses[0].result, Check::Fail);
        assert_eq!(nshtp.hypotheses[2].result, Check::NotEvaluated);
    }

    #[test]
    fn enumeration_budget_points_to_flags() {
        let a = Matrix::from_fn(10, 40, |i, j| ((i * 31 + j * 17) % 11) as f64 - 5.0);
        let mut req = CertifyRequest::new(a, "test", 4);
        req.budget = 10;
        let err = run_certify(&req).unwrap_err().to_string();
        assert!(err.contains("--delta3k"), "{err}");
    }

    #[test]
    fn baselines_are_refused() {
        let mut req = CertifyRequest::new(Matrix::identity(4), "identity", 1);
        req.algorithms = vec![Algorithm::Iht];
        let r = report(&req, Algorithm::Iht);
        assert!(!r.certified);
        assert!(matches!(r.violations[0], Violation::UnsupportedAlgorithm { .. }));
    }
}
