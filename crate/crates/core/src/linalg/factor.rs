use crate::error::{check_len, Error, Result};
use crate::linalg::dense::{dot, DenseMatrix, DenseVector};
use crate::scalar::Scalar;
use crate::threshold::{SparseVector, SupportSet};

/// Lower-triangular Cholesky factor `L` with `M = L L^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cholesky<T> {
    lower: DenseMatrix<T>,
}

/// Index of the first pivot that fell below the requested threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct PivotFailure {
    pub index: usize,
}

impl<T: Scalar> Cholesky<T> {
    /// Factors a symmetric positive-definite matrix. Only the lower triangle is read.
    pub fn factor(matrix: &DenseMatrix<T>) -> Result<Self> {
        Self::factor_with_min_pivot(matrix, T::zero()).map_err(|failure| {
            Error::Numeric(format!(
                "matrix is not positive definite (pivot {})",
                failure.index
            ))
        })
    }

    /// Factors, rejecting any pivot (the diagonal remainder before its square
    /// root is taken) that is not strictly above `min_pivot`.
    pub(crate) fn factor_with_min_pivot(
        matrix: &DenseMatrix<T>,
        min_pivot: T,
    ) -> std::result::Result<Self, PivotFailure> {
        let n = matrix.rows();
        assert_eq!(n, matrix.cols(), "Cholesky needs a square matrix");
        let mut lower = DenseMatrix::zeros(n, n);
        for j in 0..n {
            let row_j = &lower.row(j)[..j];
            let diag = matrix[(j, j)] - dot(row_j, row_j);
            if !(diag > T::zero()) || !(diag > min_pivot) {
                return Err(PivotFailure { index: j });
            }
            let pivot = diag.sqrt();
            if !pivot.is_finite() {
                return Err(PivotFailure { index: j });
            }
            lower[(j, j)] = pivot;
            for i in (j + 1)..n {
                let s = matrix[(i, j)] - dot(&lower.row(i)[..j], &lower.row(j)[..j]);
                lower[(i, j)] = s / pivot;
            }
        }
        Ok(Self { lower })
    }

    pub fn dim(&self) -> usize {
        self.lower.rows()
    }

    pub fn lower(&self) -> &DenseMatrix<T> {
        &self.lower
    }

    /// `L L^T`.
    pub fn reconstruct(&self) -> DenseMatrix<T> {
        self.lower.gram_rows()
    }

    /// Solves `L L^T x = b` in place.
    pub fn solve_in_place(&self, b: &mut [T]) {
        let n = self.dim();
        debug_assert_eq!(b.len(), n);
        for i in 0..n {
            let s = b[i] - dot(&self.lower.row(i)[..i], &b[..i]);
            b[i] = s / self.lower[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for l in (i + 1)..n {
                s = s - self.lower[(l, i)] * b[l];
            }
            b[i] = s / self.lower[(i, i)];
        }
    }

    pub fn solve(&self, b: &DenseVector<T>) -> Result<DenseVector<T>> {
        check_len("Cholesky solve", self.dim(), b.len())?;
        let mut x = b.clone().into_vec();
        self.solve_in_place(&mut x);
        Ok(DenseVector::from_vec_unchecked(x))
    }
}

/// Least-squares fit of `y` using only the columns of `a` in `support`.
///
/// Solves the normal equations `A_Ω^T A_Ω z_Ω = A_Ω^T y` by Cholesky and returns
/// the full-length solution, exactly zero off the support. A Cholesky pivot of
/// `A_ΩᵀA_Ω` at or below `T::rank_tolerance() * ‖A_Ω‖²` is reported as
/// [`Error::RankDeficient`]; `‖A_Ω‖_F²` (the Gram trace) stands in for the
/// squared spectral norm, which it bounds from above.
pub fn least_squares_on_support<T: Scalar>(
    a: &DenseMatrix<T>,
    y: &DenseVector<T>,
    support: &SupportSet,
) -> Result<SparseVector<T>> {
    check_len("least squares measurements", a.rows(), y.len())?;
    if support.ambient_len() != a.cols() {
        return Err(Error::DimensionMismatch {
            context: "least squares support",
            expected: a.cols(),
            found: support.ambient_len(),
        });
    }
    let idx = support.indices();
    let k = idx.len();
    if k == 0 {
        return Ok(SparseVector::zeros(a.cols()));
    }
    if k > a.rows() {
        return Err(Error::RankDeficient {
            support: support.clone(),
        });
    }

    // Normal equations accumulated row by row: G = A_Ω^T A_Ω, b = A_Ω^T y.
    let mut gram = DenseMatrix::zeros(k, k);
    let mut rhs = vec![T::zero(); k];
    let mut restricted = vec![T::zero(); k];
    for r in 0..a.rows() {
        let row = a.row(r);
        for (dst, &j) in restricted.iter_mut().zip(idx) {
            *dst = row[j];
        }
        let yr = y[r];
        for i in 0..k {
            let ai = restricted[i];
            rhs[i] = rhs[i] + ai * yr;
            for j in 0..=i {
                gram[(i, j)] = gram[(i, j)] + ai * restricted[j];
            }
        }
    }
    let trace = (0..k).fold(T::zero(), |acc, i| acc + gram[(i, i)]);
    let min_pivot = T::rank_tolerance() * trace;
    let chol = Cholesky::factor_with_min_pivot(&gram, min_pivot).map_err(|_| {
        Error::RankDeficient {
            support: support.clone(),
        }
    })?;
    chol.solve_in_place(&mut rhs);
    if !rhs.iter().all(|v| v.is_finite()) {
        return Err(Error::NonFinite("least squares solution"));
    }
    Ok(SparseVector::from_support_values(support.clone(), rhs))
}

/// `‖y - A x‖₂`.
pub fn residual<T: Scalar>(a: &DenseMatrix<T>, y: &DenseVector<T>, x: &DenseVector<T>) -> Result<T> {
    check_len("residual measurements", a.rows(), y.len())?;
    let ax = a.mul_vec(x)?;
    Ok(y.sub(&ax)?.norm2())
}

/// `‖y - A x‖₂` for a sparse `x`.
pub fn residual_sparse<T: Scalar>(
    a: &DenseMatrix<T>,
    y: &DenseVector<T>,
    x: &SparseVector<T>,
) -> Result<T> {
    check_len("residual measurements", a.rows(), y.len())?;
    check_len("residual signal", a.cols(), x.ambient_len())?;
    let ax = a.mul_sparse(x.support().indices(), x.values());
    Ok(y.sub(&ax)?.norm2())
}
