//! Seeded generation of Gaussian measurement matrices, sparse signals and
//! (optionally noisy) measurements.
//!
//! All randomness comes from ChaCha20 ([`rand_chacha::ChaCha20Rng`]) seeded
//! with `seed_from_u64(seed)` and positioned with `set_stream(stream)`.
//! Normal draws use `rand_distr::StandardNormal` in `f64`. Draw order for
//! [`make_problem`]: the matrix row-major, then the support, then the signal
//! values, then the noise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::linalg::{DenseMatrix, DenseVector};
use crate::scalar::Scalar;
use crate::threshold::{SparseVector, SupportSet};

/// Deterministic random stream identified by `(seed, stream)`.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha20Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform integer in `[0, bound)`; drawn as `u64` so results do not depend on pointer width.
    pub fn below(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound as u64) as usize
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn rng_mut(&mut self) -> &mut ChaCha20Rng {
        &mut self.rng
    }
}

/// `m × n` matrix of i.i.d. standard normal entries.
pub fn gaussian_matrix<T: Scalar>(m: usize, n: usize, rng: &mut RngStream) -> Result<DenseMatrix<T>> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("matrix dimensions must be positive".into()));
    }
    let entries = (0..m * n)
        .map(|_| T::from_f64_lossy(rng.standard_normal()))
        .collect();
    DenseMatrix::new(m, n, entries)
}

/// Vector of i.i.d. standard normal entries.
pub fn gaussian_vector<T: Scalar>(len: usize, rng: &mut RngStream) -> DenseVector<T> {
    DenseVector::from_vec_unchecked(
        (0..len)
            .map(|_| T::from_f64_lossy(rng.standard_normal()))
            .collect(),
    )
}

/// Uniformly random `k`-subset of `[0, n)` via a partial Fisher-Yates shuffle.
pub fn uniform_support(n: usize, k: usize, rng: &mut RngStream) -> Result<SupportSet> {
    if k > n {
        return Err(Error::InvalidInput(format!(
            "sparsity {k} exceeds signal length {n}"
        )));
    }
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + rng.below(n - i);
        pool.swap(i, j);
    }
    pool.truncate(k);
    SupportSet::new(n, pool)
}

/// `k`-sparse signal with a uniform support and standard normal values.
pub fn sparse_signal<T: Scalar>(n: usize, k: usize, rng: &mut RngStream) -> Result<SparseVector<T>> {
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!(
            "sparsity must satisfy 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let support = uniform_support(n, k, rng)?;
    let values = (0..k)
        .map(|_| loop {
            let v = T::from_f64_lossy(rng.standard_normal());
            if !v.is_zero() {
                break v;
            }
        })
        .collect();
    Ok(SparseVector::from_support_values(support, values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    #[default]
    Gaussian,
}

/// Everything needed to regenerate a problem bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemDescriptor {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub noise_scale: f64,
    #[serde(default)]
    pub ensemble: Ensemble,
    pub seed: u64,
    #[serde(default)]
    pub stream: u64,
    /// Rescale the noise so that `‖e‖₂ = noise_scale` instead of using it as a standard deviation.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub noise_norm: bool,
}

impl ProblemDescriptor {
    pub fn new(m: usize, n: usize, k: usize, noise_scale: f64, seed: u64) -> Self {
        Self {
            m,
            n,
            k,
            noise_scale,
            ensemble: Ensemble::Gaussian,
            seed,
            stream: 0,
            noise_norm: false,
        }
    }

    pub fn generate<T: Scalar>(&self) -> Result<SparseProblem<T>> {
        let mut rng = RngStream::new(self.seed, self.stream);
        let mut problem = make_problem(self.m, self.n, self.k, self.noise_scale, self.noise_norm, &mut rng)?;
        problem.descriptor = Some(self.clone());
        Ok(problem)
    }
}

/// Measurement matrix, measurements, and optional ground truth and noise.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseProblem<T> {
    pub a: DenseMatrix<T>,
    pub y: DenseVector<T>,
    pub truth: Option<SparseVector<T>>,
    pub noise: Option<DenseVector<T>>,
    pub k: usize,
    pub descriptor: Option<ProblemDescriptor>,
}

impl<T: Scalar> SparseProblem<T> {
    /// Problem without ground truth.
    pub fn blind(a: DenseMatrix<T>, y: DenseVector<T>, k: usize) -> Result<Self> {
        check_len("problem measurements", a.rows(), y.len())?;
        if k == 0 || k > a.cols() {
            return Err(Error::InvalidInput(format!("invalid sparsity level {k}")));
        }
        Ok(Self {
            a,
            y,
            truth: None,
            noise: None,
            k,
            descriptor: None,
        })
    }

    /// Exact measurements `y = A x*` of a known signal.
    pub fn from_truth(a: DenseMatrix<T>, truth: SparseVector<T>, k: usize) -> Result<Self> {
        check_len("problem signal", a.cols(), truth.ambient_len())?;
        let y = a.mul_sparse(truth.support().indices(), truth.values());
        let mut p = Self::blind(a, y, k)?;
        p.truth = Some(truth);
        Ok(p)
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }
}

/// Gaussian `A`, `k`-sparse Gaussian `x*`, and `y = A x* + e` with
/// `e = noise_scale · g` (`g` standard normal) when `noise_scale > 0`.
/// With `noise_norm`, `e` is instead rescaled to `‖e‖₂ = noise_scale`.
pub fn make_problem<T: Scalar>(
    m: usize,
    n: usize,
    k: usize,
    noise_scale: f64,
    noise_norm: bool,
    rng: &mut RngStream,
) -> Result<SparseProblem<T>> {
    if !(noise_scale >= 0.0) || !noise_scale.is_finite() {
        return Err(Error::InvalidInput(format!(
            "noise scale must be finite and non-negative, got {noise_scale}"
        )));
    }
    let a = gaussian_matrix::<T>(m, n, rng)?;
    let truth = sparse_signal::<T>(n, k, rng)?;
    let clean = a.mul_sparse(truth.support().indices(), truth.values());
    let noise = (noise_scale > 0.0).then(|| {
        let g = gaussian_vector::<T>(m, rng);
        let factor = if noise_norm {
            noise_scale / g.norm2().to_f64_lossy()
        } else {
            noise_scale
        };
        g.scaled(T::from_f64_lossy(factor))
    });
    let y = match &noise {
        Some(e) => clean.add_scaled(T::one(), e)?,
        None => clean,
    };
    let descriptor = ProblemDescriptor {
        stream: rng.stream(),
        noise_norm,
        ..ProblemDescriptor::new(m, n, k, noise_scale, rng.seed())
    };
    Ok(SparseProblem {
        a,
        y,
        truth: Some(truth),
        noise,
        k,
        descriptor: Some(descriptor),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_moments() {
        let mut rng = RngStream::new(7, 0);
        let a = gaussian_matrix::<f64>(500, 1000, &mut rng).unwrap();
        let n = a.as_slice().len() as f64;
        let mean = a.as_slice().iter().sum::<f64>() / n;
        let var = a.as_slice().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a = gaussian_matrix::<f64>(4, 5, &mut RngStream::new(3, 1)).unwrap();
        let b = gaussian_matrix::<f64>(4, 5, &mut RngStream::new(3, 1)).unwrap();
        let c = gaussian_matrix::<f64>(4, 5, &mut RngStream::new(3, 2)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn full_support_and_exact_sparsity() {
        let mut rng = RngStream::new(1, 0);
        let s = sparse_signal::<f64>(6, 6, &mut rng).unwrap();
        assert_eq!(s.support(), &SupportSet::full(6));
        for k in 1..=6 {
            assert_eq!(sparse_signal::<f64>(6, k, &mut rng).unwrap().nnz(), k);
        }
        assert!(sparse_signal::<f64>(3, 4, &mut rng).is_err());
        assert!(sparse_signal::<f64>(3, 0, &mut rng).is_err());
    }

    #[test]
    fn support_is_uniform() {
        let mut rng = RngStream::new(11, 0);
        let mut counts = [0usize; 10];
        for _ in 0..10_000 {
            let s = uniform_support(10, 1, &mut rng).unwrap();
            counts[s.indices()[0]] += 1;
        }
        for c in counts {
            let f = c as f64 / 10_000.0;
            assert!((f - 0.1).abs() <= 0.02, "frequency {f}");
        }
    }

    #[test]
    fn noiseless_measurements_are_exact() {
        let p = ProblemDescriptor::new(20, 40, 3, 0.0, 5).generate::<f64>().unwrap();
        assert!(p.noise.is_none());
        let truth = p.truth.as_ref().unwrap();
        assert_eq!(p.y, p.a.mul_vec(&truth.to_dense()).unwrap());
    }

    #[test]
    fn noisy_measurements_are_consistent() {
        for seed in 0..5 {
            let p = ProblemDescriptor::new(500, 40, 3, 0.001, seed).generate::<f64>().unwrap();
            let e = p.noise.as_ref().unwrap();
            let ratio = e.norm2() / (0.001 * 500f64.sqrt());
            assert!((1.0 / 1.5..=1.5).contains(&ratio), "ratio {ratio}");
            let ax = p.a.mul_vec(&p.truth.as_ref().unwrap().to_dense()).unwrap();
            for i in 0..500 {
                assert!((p.y[i] - ax[i] - e[i]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn noise_norm_rescales() {
        let d = ProblemDescriptor {
            noise_norm: true,
            ..ProblemDescriptor::new(50, 60, 2, 0.01, 9)
        };
        let p = d.generate::<f64>().unwrap();
        assert!((p.noise.unwrap().norm2() - 0.01).abs() < 1e-15);
    }

    #[test]
    fn descriptor_round_trip_regenerates() {
        let d = ProblemDescriptor {
            stream: 4,
            ..ProblemDescriptor::new(10, 20, 2, 0.5, 99)
        };
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(
            json,
            r#"{"m":10,"n":20,"k":2,"noise_scale":0.5,"ensemble":"gaussian","seed":99,"stream":4}"#
        );
        let back: ProblemDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.generate::<f64>().unwrap(), d.generate::<f64>().unwrap());
    }
}
