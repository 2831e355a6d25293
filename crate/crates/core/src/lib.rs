//! Sparse signal recovery by Newton-step hard thresholding.
//!
//! The crate provides the NSIHT and NSHTP solvers (hard thresholding driven by
//! the regularized Newton direction `(AᵀA + εI)⁻¹ Aᵀ (y − Ax)`), the classical
//! IHT and HTP baselines, an exact restricted-isometry oracle for small
//! matrices with the matching parameter advisor and convergence certificates,
//! and seeded problem generation.
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.

// Negated comparisons deliberately treat NaN as failing the test.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod linalg;
pub mod problem;
pub mod ric;
pub mod scalar;
pub mod solver;
pub mod threshold;

pub use error::{Error, Result};
pub use linalg::{
    apply_kernel, build_kernel, least_squares_on_support, residual, singular_values, DenseMatrix,
    DenseVector, RegularizedKernel, Spectrum,
};
pub use problem::{make_problem, ProblemDescriptor, RngStream, SparseProblem};
pub use ric::{
    advise_nshtp, advise_nsiht, certify, exact_ric, ConvergenceCertificate, ParameterWindow,
    RicProfile, RicValue,
};
pub use scalar::Scalar;
pub use solver::{solve, Algorithm, RecoveryResult, SolverConfig, Status, StopRule};
pub use threshold::{hard_threshold, restrict, support_of, SparseVector, SupportSet};

pub type Matrix = DenseMatrix<f64>;
pub type Vector = DenseVector<f64>;
pub type Sparse = SparseVector<f64>;
pub type Problem = SparseProblem<f64>;
pub type Config = SolverConfig<f64>;
pub type Recovery = RecoveryResult<f64>;
pub type Certificate = ConvergenceCertificate<f64>;

pub type Matrix32 = DenseMatrix<f32>;
pub type Vector32 = DenseVector<f32>;
