//! Exact restricted isometry constants by support enumeration, the (ε, λ)
//! parameter windows under which the Newton-step solvers provably contract,
//! and the resulting convergence certificates.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{eig2, symmetric_spectral_norm, DenseMatrix, Spectrum};
use crate::scalar::{cast, Scalar};
use crate::solver::Algorithm;

/// Default cap on the number of supports [`exact_ric`] will enumerate.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 2_000_000;

/// `δ_q` for one order `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RicValue<T> {
    pub order: usize,
    pub value: T,
    /// `value < 1`.
    pub satisfies_rip: bool,
}

/// Saturating binomial coefficient.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `δ_q = max_{|S| = q} ‖A_Sᵀ A_S − I‖₂`, within [`DEFAULT_ENUMERATION_BUDGET`].
///
/// Supports smaller than `q` need not be visited: by eigenvalue interlacing the
/// extremes of `A_Sᵀ A_S` widen as `S` grows.
pub fn exact_ric<T: Scalar>(a: &DenseMatrix<T>, q: usize) -> Result<RicValue<T>> {
    exact_ric_with_budget(a, q, DEFAULT_ENUMERATION_BUDGET)
}

pub fn exact_ric_with_budget<T: Scalar>(
    a: &DenseMatrix<T>,
    q: usize,
    budget: u128,
) -> Result<RicValue<T>> {
    let n = a.cols();
    if q == 0 || q > n {
        return Err(Error::InvalidInput(format!(
            "RIC order must satisfy 1 <= q <= n, got q={q}, n={n}"
        )));
    }
    let subsets = binomial(n, q);
    if subsets > budget {
        return Err(Error::BudgetExceeded {
            order: q,
            subsets,
            budget,
        });
    }
    let gram = a.gram_cols();
    let mut sub = DenseMatrix::zeros(q, q);
    let mut combo: Vec<usize> = (0..q).collect();
    let mut best = T::zero();
    loop {
        let norm = match q {
            1 => (gram[(combo[0], combo[0])] - T::one()).abs(),
            2 => {
                let (i, j) = (combo[0], combo[1]);
                let (hi, lo) = eig2(gram[(i, i)] - T::one(), gram[(i, j)], gram[(j, j)] - T::one());
                hi.abs().max(lo.abs())
            }
            _ => {
                for (r, &i) in combo.iter().enumerate() {
                    for (c, &j) in combo.iter().enumerate() {
                        sub[(r, c)] = gram[(i, j)] - if r == c { T::one() } else { T::zero() };
                    }
                }
                symmetric_spectral_norm(&sub)?
            }
        };
        best = best.max(norm);
        if !next_combination(&mut combo, n) {
            break;
        }
    }
    Ok(RicValue {
        order: q,
        value: best,
        satisfies_rip: best < T::one(),
    })
}

/// Advances `combo` to the next lexicographic `q`-subset of `[0, n)`.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let q = combo.len();
    let mut i = q;
    while i > 0 {
        i -= 1;
        if combo[i] < n - q + i {
            combo[i] += 1;
            for j in (i + 1)..q {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The three constants the convergence theorems consume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RicProfile<T> {
    pub delta_k: T,
    pub delta_2k: T,
    pub delta_3k: T,
}

impl<T: Scalar> RicProfile<T> {
    /// Exact `δ_k, δ_2k, δ_3k`, each order clamped to `n`.
    pub fn exact(a: &DenseMatrix<T>, k: usize, budget: u128) -> Result<Self> {
        let n = a.cols();
        let order = |m: usize| (m * k).min(n);
        Ok(Self {
            delta_k: exact_ric_with_budget(a, order(1), budget)?.value,
            delta_2k: exact_ric_with_budget(a, order(2), budget)?.value,
            delta_3k: exact_ric_with_budget(a, order(3), budget)?.value,
        })
    }
}

/// Hypothesis on `δ_3k` for each certified algorithm: `1/√3` for NSIHT, `1/2` for NSHTP.
pub fn delta_threshold<T: Scalar>(algorithm: Algorithm) -> Option<T> {
    match algorithm {
        Algorithm::Nsiht => Some(T::one() / cast::<T>(3.0).sqrt()),
        Algorithm::Nshtp => Some(cast(0.5)),
        Algorithm::Iht | Algorithm::Htp => None,
    }
}

/// A violated hypothesis.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum Violation<T> {
    UnsupportedAlgorithm { algorithm: Algorithm },
    DegenerateSpectrum,
    DeltaAboveThreshold { delta_3k: T, threshold: T },
    DeltasNotOrdered { delta_k: T, delta_2k: T, delta_3k: T },
    EpsilonTooSmall { epsilon: T, lower: T },
    LambdaTooSmall { lambda: T, lower: T },
    LambdaTooLarge { lambda: T, upper: T },
    NotContracting { rho: T },
    NonFinite,
}

impl<T: fmt::Display> fmt::Display for Violation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnsupportedAlgorithm { algorithm } => {
                write!(f, "no convergence theory for {algorithm}")
            }
            Violation::DegenerateSpectrum => write!(f, "largest singular value is zero"),
            Violation::DeltaAboveThreshold { delta_3k, threshold } => {
                write!(f, "delta_3k = {delta_3k} is not below {threshold}")
            }
            Violation::DeltasNotOrdered { delta_k, delta_2k, delta_3k } => write!(
                f,
                "constants must satisfy delta_k <= delta_2k <= delta_3k, got {delta_k}, {delta_2k}, {delta_3k}"
            ),
            Violation::EpsilonTooSmall { epsilon, lower } => {
                write!(f, "epsilon = {epsilon} must exceed {lower}")
            }
            Violation::LambdaTooSmall { lambda, lower } => {
                write!(f, "lambda = {lambda} must exceed {lower}")
            }
            Violation::LambdaTooLarge { lambda, upper } => {
                write!(f, "lambda = {lambda} must not exceed {upper}")
            }
            Violation::NotContracting { rho } => write!(f, "rho = {rho} is not below 1"),
            Violation::NonFinite => write!(f, "non-finite certificate quantity"),
        }
    }
}

/// Lower bound on ε for one algorithm, spectrum and `δ_3k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParameterAdvice<T> {
    pub algorithm: Algorithm,
    pub threshold: T,
    pub delta_3k: T,
    pub sigma_max: T,
    pub sigma_min: T,
    /// Exclusive lower bound on ε.
    pub epsilon_lower: T,
    pub feasible: bool,
    pub reason: Option<Violation<T>>,
}

/// Stepsize range for a chosen ε: `lambda_lower < λ ≤ lambda_upper`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParameterWindow<T> {
    pub epsilon: T,
    /// Exclusive.
    pub epsilon_lower: T,
    /// Exclusive.
    pub lambda_lower: T,
    /// Inclusive.
    pub lambda_upper: T,
    /// `ε > epsilon_lower` and `lambda_lower < lambda_upper`.
    pub feasible: bool,
    pub reason: Option<Violation<T>>,
}

impl<T: Scalar> ParameterWindow<T> {
    pub fn contains_lambda(&self, lambda: T) -> bool {
        self.feasible && lambda > self.lambda_lower && lambda <= self.lambda_upper
    }
}

fn advise<T: Scalar>(algorithm: Algorithm, spectrum: &Spectrum<T>, delta_3k: T) -> ParameterAdvice<T> {
    let sigma_max = spectrum.sigma_max();
    let sigma_min = spectrum.sigma_min();
    let s1 = sigma_max * sigma_max;
    let sm = sigma_min * sigma_min;
    let mut advice = ParameterAdvice {
        algorithm,
        threshold: T::zero(),
        delta_3k,
        sigma_max,
        sigma_min,
        epsilon_lower: T::infinity(),
        feasible: false,
        reason: None,
    };
    let Some(threshold) = delta_threshold::<T>(algorithm) else {
        advice.reason = Some(Violation::UnsupportedAlgorithm { algorithm });
        return advice;
    };
    advice.threshold = threshold;
    if !delta_3k.is_finite() || delta_3k < T::zero() {
        advice.reason = Some(Violation::NonFinite);
        return advice;
    }
    if !(delta_3k < threshold) {
        advice.reason = Some(Violation::DeltaAboveThreshold { delta_3k, threshold });
        return advice;
    }
    if sigma_max.is_zero() {
        advice.reason = Some(Violation::DegenerateSpectrum);
        return advice;
    }
    let gap = threshold - delta_3k;
    advice.epsilon_lower = s1.max(((s1 - sm) / gap - T::one()) * s1);
    advice.feasible = true;
    advice
}

/// ε lower bound for NSIHT (requires `δ_3k < 1/√3`).
pub fn advise_nsiht<T: Scalar>(spectrum: &Spectrum<T>, delta_3k: T) -> ParameterAdvice<T> {
    advise(Algorithm::Nsiht, spectrum, delta_3k)
}

/// ε lower bound for NSHTP (requires `δ_3k < 1/2`).
pub fn advise_nshtp<T: Scalar>(spectrum: &Spectrum<T>, delta_3k: T) -> ParameterAdvice<T> {
    advise(Algorithm::Nshtp, spectrum, delta_3k)
}

/// ε lower bound for NSIHT run with `λ = ε`: `max{σ₁², (σ₁²/(1/√3 − δ_3k) − 1) σ₁²}`.
pub fn advise_nsiht_lambda_equals_epsilon<T: Scalar>(spectrum: &Spectrum<T>, delta_3k: T) -> Option<T> {
    let threshold = delta_threshold::<T>(Algorithm::Nsiht)?;
    if !(delta_3k < threshold) || !(delta_3k >= T::zero()) {
        return None;
    }
    let s1 = spectrum.sigma_max() * spectrum.sigma_max();
    if s1.is_zero() {
        return None;
    }
    Some(s1.max((s1 / (threshold - delta_3k) - T::one()) * s1))
}

impl<T: Scalar> ParameterAdvice<T> {
    /// Stepsize window for a caller-chosen ε.
    pub fn window(&self, epsilon: T) -> ParameterWindow<T> {
        let s1 = self.sigma_max * self.sigma_max;
        let sm = self.sigma_min * self.sigma_min;
        let mut window = ParameterWindow {
            epsilon,
            epsilon_lower: self.epsilon_lower,
            lambda_lower: T::infinity(),
            lambda_upper: epsilon + sm,
            feasible: false,
            reason: self.reason.clone(),
        };
        if !self.feasible {
            return window;
        }
        let gap = self.threshold - self.delta_3k;
        window.lambda_lower = epsilon + s1 - gap * (epsilon + s1) / s1;
        if !(epsilon > self.epsilon_lower) {
            window.reason = Some(Violation::EpsilonTooSmall {
                epsilon,
                lower: self.epsilon_lower,
            });
            return window;
        }
        window.feasible = window.lambda_lower < window.lambda_upper;
        window
    }

    /// A concrete admissible pair: `ε = 2·epsilon_lower` and the largest admissible λ.
    pub fn suggest(&self) -> Option<(T, T)> {
        if !self.feasible {
            return None;
        }
        let epsilon = self.epsilon_lower * cast(2.0);
        let w = self.window(epsilon);
        w.feasible.then_some((epsilon, w.lambda_upper))
    }
}

/// Inputs a certificate was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertificateInputs<T> {
    pub sigma_max: T,
    pub sigma_min: T,
    pub delta_k: T,
    pub delta_2k: T,
    pub delta_3k: T,
    pub epsilon: T,
    pub lambda: T,
}

/// Contraction factor ρ and noise amplification τ with
/// `‖xᵖ − x_S‖₂ ≤ ρᵖ ‖x⁰ − x_S‖₂ + τ ‖A x_S̄ + e‖₂`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceCertificate<T> {
    pub algorithm: Algorithm,
    pub rho: T,
    pub tau: T,
    pub inputs: CertificateInputs<T>,
}

impl<T: Scalar> ConvergenceCertificate<T> {
    /// `ρᵖ · initial_error + τ · perturbation`.
    pub fn error_bound(&self, iteration: usize, initial_error: T, perturbation: T) -> T {
        self.rho.powi(iteration as i32) * initial_error + self.tau * perturbation
    }

    /// Iterations after which the noiseless bound guarantees `‖xᵖ − x*‖ ≤ tol·‖x*‖`.
    pub fn iterations_to_tolerance(&self, tolerance: T, truth_norm: T, initial_error: T) -> Option<usize> {
        if initial_error <= tolerance * truth_norm {
            return Some(0);
        }
        if self.rho.is_zero() {
            return Some(1);
        }
        let p = ((tolerance * truth_norm / initial_error).ln() / self.rho.ln()).ceil();
        p.to_usize()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Refusal<T> {
    pub algorithm: Algorithm,
    pub violations: Vec<Violation<T>>,
}

impl<T: fmt::Display> fmt::Display for Refusal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} not certified: ", self.algorithm)?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug + fmt::Display> std::error::Error for Refusal<T> {}

/// Checks every hypothesis of the convergence theorem for `algorithm` and
/// returns ρ, τ when all hold.
///
/// NSIHT: `ρ = √3(δ_3k + σ₁² − λσ₁²/(ε+σ₁²))`, `τ = √3λσ₁/((ε+σ₁²)(1−ρ))`.
/// NSHTP: ρ as above divided by `√(1−δ_2k²)`, and
/// `τ = (√3λσ₁/(√(1−δ_2k²)(ε+σ₁²)) + √(1+δ_k)/(1−δ_2k)) / (1−ρ)`.
pub fn certify<T: Scalar>(
    algorithm: Algorithm,
    spectrum: &Spectrum<T>,
    deltas: RicProfile<T>,
    epsilon: T,
    lambda: T,
) -> std::result::Result<ConvergenceCertificate<T>, Refusal<T>> {
    let refuse = |violations| Refusal { algorithm, violations };
    let mut violations = Vec::new();
    let RicProfile { delta_k, delta_2k, delta_3k } = deltas;
    if !(delta_k <= delta_2k && delta_2k <= delta_3k && delta_k >= T::zero()) {
        violations.push(Violation::DeltasNotOrdered { delta_k, delta_2k, delta_3k });
    }
    let advice = advise(algorithm, spectrum, delta_3k);
    if let Some(reason) = &advice.reason {
        violations.push(reason.clone());
        return Err(refuse(violations));
    }
    let window = advice.window(epsilon);
    if let Some(reason) = window.reason {
        violations.push(reason);
    } else {
        if !(lambda > window.lambda_lower) {
            violations.push(Violation::LambdaTooSmall { lambda, lower: window.lambda_lower });
        }
        if !(lambda <= window.lambda_upper) {
            violations.push(Violation::LambdaTooLarge { lambda, upper: window.lambda_upper });
        }
    }

    let sigma_max = spectrum.sigma_max();
    let s1 = sigma_max * sigma_max;
    let sqrt3 = cast::<T>(3.0).sqrt();
    let shrink = s1 - lambda * s1 / (epsilon + s1);
    let direct = sqrt3 * lambda * sigma_max / (epsilon + s1);
    let (rho, tau) = match algorithm {
        Algorithm::Nsiht => {
            let rho = sqrt3 * (delta_3k + shrink);
            (rho, direct / (T::one() - rho))
        }
        Algorithm::Nshtp => {
            let root = (T::one() - delta_2k * delta_2k).sqrt();
            let rho = sqrt3 * (delta_3k + shrink) / root;
            let pursuit = (T::one() + delta_k).sqrt() / (T::one() - delta_2k);
            (rho, (direct / root + pursuit) / (T::one() - rho))
        }
        Algorithm::Iht | Algorithm::Htp => unreachable!("rejected by advise"),
    };
    if !(rho < T::one()) {
        violations.push(Violation::NotContracting { rho });
    }
    if !rho.is_finite() || !tau.is_finite() || rho < T::zero() || !(tau > T::zero()) {
        violations.push(Violation::NonFinite);
    }
    if !violations.is_empty() {
        return Err(refuse(violations));
    }
    Ok(ConvergenceCertificate {
        algorithm,
        rho,
        tau,
        inputs: CertificateInputs {
            sigma_max,
            sigma_min: spectrum.sigma_min(),
            delta_k,
            delta_2k,
            delta_3k,
            epsilon,
            lambda,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::singular_values;

    fn unit_spectrum() -> Spectrum<f64> {
        Spectrum::from_values(vec![1.0, 1.0]).unwrap()
    }

    fn zero_deltas() -> RicProfile<f64> {
        RicProfile { delta_k: 0.0, delta_2k: 0.0, delta_3k: 0.0 }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(12, 2), 66);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(1000, 500), u128::MAX);
    }

    #[test]
    fn orthonormal_columns_have_zero_ric() {
        let a = DenseMatrix::<f64>::identity(4);
        for q in 1..=4 {
            let r = exact_ric(&a, q).unwrap();
            assert_eq!(r.value, 0.0);
            assert!(r.satisfies_rip);
        }
    }

    #[test]
    fn diagonal_first_order() {
        let a = DenseMatrix::<f64>::diagonal(&[1.0, 1.5f64.sqrt()]);
        let r = exact_ric(&a, 1).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
        // Order 2: the Gram matrix is diag(1, 1.5), so δ₂ is also 0.5.
        assert!((exact_ric(&a, 2).unwrap().value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn large_constants_are_reported_raw() {
        let a = DenseMatrix::<f64>::diagonal(&[3.0, 1.0]);
        let r = exact_ric(&a, 1).unwrap();
        assert_eq!(r.value, 8.0);
        assert!(!r.satisfies_rip);
    }

    #[test]
    fn budget_and_order_errors() {
        let a = DenseMatrix::<f64>::identity(30);
        assert!(matches!(
            exact_ric_with_budget(&a, 15, 1000),
            Err(Error::BudgetExceeded { order: 15, .. })
        ));
        assert!(exact_ric(&a, 0).is_err());
        assert!(exact_ric(&a, 31).is_err());
    }

    #[test]
    fn nsiht_unit_window() {
        let advice = advise_nsiht(&unit_spectrum(), 0.0);
        assert!(advice.feasible);
        assert_eq!(advice.epsilon_lower, 1.0);
        let w = advice.window(2.0);
        assert!(w.feasible);
        assert!((w.lambda_lower - (3.0 - 3f64.sqrt())).abs() < 1e-14);
        assert_eq!(w.lambda_upper, 3.0);
        assert!(w.contains_lambda(3.0) && !w.contains_lambda(1.2));
    }

    #[test]
    fn nshtp_unit_window() {
        let advice = advise_nshtp(&unit_spectrum(), 0.0);
        assert_eq!(advice.epsilon_lower, 1.0);
        let w = advice.window(2.0);
        assert!((w.lambda_lower - 1.5).abs() < 1e-14);
        assert_eq!(w.lambda_upper, 3.0);
        assert!(w.lambda_lower < w.lambda_upper);
    }

    #[test]
    fn threshold_boundaries_are_infeasible() {
        let third = 1.0 / 3f64.sqrt();
        let a = advise_nsiht(&unit_spectrum(), third);
        assert!(!a.feasible);
        assert!(matches!(a.reason, Some(Violation::DeltaAboveThreshold { .. })));
        assert!(!a.window(2.0).feasible);
        assert!(!advise_nshtp(&unit_spectrum(), 0.5).feasible);
        assert!(advise_nsiht(&unit_spectrum(), 0.55).feasible);
        assert!(!advise_nshtp(&unit_spectrum(), 0.55).feasible);
    }

    #[test]
    fn small_epsilon_makes_window_infeasible() {
        let w = advise_nsiht(&unit_spectrum(), 0.0).window(1.0);
        assert!(!w.feasible);
        assert!(matches!(w.reason, Some(Violation::EpsilonTooSmall { .. })));
    }

    #[test]
    fn lambda_equals_epsilon_bound() {
        let lower = advise_nsiht_lambda_equals_epsilon(&unit_spectrum(), 0.0).unwrap();
        assert_eq!(lower, 1.0);
        let s = Spectrum::from_values(vec![2.0, 1.0]).unwrap();
        // σ₁² = 4: max{4, (4√3 − 1)·4}.
        let expected = (4.0 * 3f64.sqrt() - 1.0) * 4.0;
        assert!((advise_nsiht_lambda_equals_epsilon(&s, 0.0).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn nsiht_certificate_unit_case() {
        let c = certify(Algorithm::Nsiht, &unit_spectrum(), zero_deltas(), 2.0, 3.0).unwrap();
        assert_eq!(c.rho, 0.0);
        assert!((c.tau - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn nshtp_certificate_with_zero_deltas() {
        let c = certify(Algorithm::Nshtp, &unit_spectrum(), zero_deltas(), 2.0, 2.5).unwrap();
        // ρ = √3(1 − 2.5/3), τ = (√3·2.5/3 + 1)/(1 − ρ).
        let rho = 3f64.sqrt() * (1.0 - 2.5 / 3.0);
        assert!((c.rho - rho).abs() < 1e-15);
        assert!((c.tau - (3f64.sqrt() * 2.5 / 3.0 + 1.0) / (1.0 - rho)).abs() < 1e-14);
    }

    #[test]
    fn refusals() {
        let r = certify(Algorithm::Nsiht, &unit_spectrum(), zero_deltas(), 2.0, 1.0).unwrap_err();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::LambdaTooSmall { .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::NotContracting { .. })));
        let r = certify(Algorithm::Nsiht, &unit_spectrum(), zero_deltas(), 2.0, 3.5).unwrap_err();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::LambdaTooLarge { .. })));
        let bad = RicProfile { delta_k: 0.3, delta_2k: 0.1, delta_3k: 0.2 };
        assert!(certify(Algorithm::Nsiht, &unit_spectrum(), bad, 2.0, 3.0).is_err());
        assert!(certify(Algorithm::Htp, &unit_spectrum(), zero_deltas(), 2.0, 3.0).is_err());
        let high = RicProfile { delta_k: 0.6, delta_2k: 0.6, delta_3k: 0.6 };
        assert!(certify(Algorithm::Nsiht, &unit_spectrum(), high, 2.0, 3.0).is_err());
        assert!(certify(Algorithm::Nshtp, &unit_spectrum(), high, 2.0, 3.0).is_err());
    }

    #[test]
    fn suggestion_is_certifiable() {
        let a = DenseMatrix::<f64>::from_fn(8, 8, |i, j| if i == j { 1.0 } else { 0.02 * ((i * 8 + j) as f64).sin() });
        let spec = singular_values(&a).unwrap();
        let deltas = RicProfile::exact(&a, 1, DEFAULT_ENUMERATION_BUDGET).unwrap();
        let advice = advise_nsiht(&spec, deltas.delta_3k);
        let (eps, lam) = advice.suggest().unwrap();
        let c = certify(Algorithm::Nsiht, &spec, deltas, eps, lam).unwrap();
        assert!(c.rho < 1.0);
    }
}
