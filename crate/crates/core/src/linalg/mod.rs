//! Dense linear algebra: matrices and vectors, Cholesky factorization,
//! symmetric eigenvalues and singular values, and the regularized Newton kernel.

mod dense;
mod factor;
mod kernel;
mod spectrum;

pub use dense::{DenseMatrix, DenseVector};
pub use factor::{least_squares_on_support, residual, residual_sparse, Cholesky};
pub use kernel::{apply_kernel, build_kernel, RegularizedKernel};
pub use spectrum::{
    singular_values, spectral_norm, symmetric_eigenvalues, symmetric_spectral_norm, Spectrum,
};

pub(crate) use dense::norm2;
pub(crate) use spectrum::eig2;
