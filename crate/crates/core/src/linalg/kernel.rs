use crate::error::{check_len, Error, Result};
use crate::linalg::dense::{DenseMatrix, DenseVector};
use crate::linalg::factor::Cholesky;
use crate::scalar::Scalar;

/// The regularized Newton operator `r ↦ (AᵀA + εI)⁻¹ Aᵀ r`.
///
/// Evaluated as `Aᵀ (AAᵀ + εI)⁻¹ r`, so the only factorization is of the
/// `m × m` matrix `AAᵀ + εI`. It is built once per `(A, ε)` and reused.
#[derive(Debug, Clone)]
pub struct RegularizedKernel<'a, T> {
    source: &'a DenseMatrix<T>,
    epsilon: T,
    gram_factor: Cholesky<T>,
}

impl<'a, T: Scalar> RegularizedKernel<'a, T> {
    pub fn new(source: &'a DenseMatrix<T>, epsilon: T) -> Result<Self> {
        if !(epsilon > T::zero()) || !epsilon.is_finite() {
            return Err(Error::InvalidInput(format!(
                "epsilon must be positive and finite, got {epsilon}"
            )));
        }
        if !source.is_finite() {
            return Err(Error::NonFinite("kernel matrix"));
        }
        let shifted = source.gram_rows().add_diagonal(epsilon)?;
        let gram_factor = Cholesky::factor(&shifted)?;
        Ok(Self {
            source,
            epsilon,
            gram_factor,
        })
    }

    pub fn source(&self) -> &'a DenseMatrix<T> {
        self.source
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn gram_factor(&self) -> &Cholesky<T> {
        &self.gram_factor
    }

    /// `(AᵀA + εI)⁻¹ Aᵀ r` for a length-`m` vector `r`.
    pub fn apply(&self, r: &DenseVector<T>) -> Result<DenseVector<T>> {
        check_len("kernel input", self.source.rows(), r.len())?;
        let mut w = r.clone().into_vec();
        self.gram_factor.solve_in_place(&mut w);
        let d = self
            .source
            .mul_vec_transposed(&DenseVector::from_vec_unchecked(w))?;
        if !d.is_finite() {
            return Err(Error::NonFinite("kernel output"));
        }
        Ok(d)
    }
}

/// Builds the kernel for `(a, epsilon)`.
pub fn build_kernel<T: Scalar>(a: &DenseMatrix<T>, epsilon: T) -> Result<RegularizedKernel<'_, T>> {
    RegularizedKernel::new(a, epsilon)
}

/// Applies a kernel to a residual vector.
pub fn apply_kernel<T: Scalar>(
    kernel: &RegularizedKernel<'_, T>,
    r: &DenseVector<T>,
) -> Result<DenseVector<T>> {
    kernel.apply(r)
}
