use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::dense::DenseMatrix;
use crate::scalar::{cast, Scalar};

const MAX_SWEEPS: usize = 100;

/// Singular values of a matrix, in descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum<T> {
    singular_values: Vec<T>,
}

impl<T: Scalar> Spectrum<T> {
    /// Builds a spectrum from arbitrary non-negative values, sorting them descending.
    pub fn from_values(mut values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("spectrum must be nonempty".into()));
        }
        if values.iter().any(|v| !v.is_finite() || *v < T::zero()) {
            return Err(Error::InvalidInput(
                "singular values must be finite and non-negative".into(),
            ));
        }
        sort_descending(&mut values);
        Ok(Self {
            singular_values: values,
        })
    }

    pub fn values(&self) -> &[T] {
        &self.singular_values
    }

    /// Largest singular value σ₁.
    pub fn sigma_max(&self) -> T {
        self.singular_values[0]
    }

    /// Smallest singular value σ_min(m,n).
    pub fn sigma_min(&self) -> T {
        *self.singular_values.last().expect("nonempty spectrum")
    }
}

fn sort_descending<T: Scalar>(values: &mut [T]) {
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
}

/// All `min(m, n)` singular values of `a`, descending.
///
/// Computed as square roots of the eigenvalues of the smaller Gram matrix,
/// with round-off negatives clamped to zero.
pub fn singular_values<T: Scalar>(a: &DenseMatrix<T>) -> Result<Spectrum<T>> {
    if !a.is_finite() {
        return Err(Error::NonFinite("singular_values input"));
    }
    let gram = if a.rows() <= a.cols() {
        a.gram_rows()
    } else {
        a.gram_cols()
    };
    let eig = symmetric_eigenvalues(&gram)?;
    let values = eig
        .into_iter()
        .map(|v| v.max(T::zero()).sqrt())
        .collect::<Vec<_>>();
    Spectrum::from_values(values)
}

/// `‖A‖₂`.
pub fn spectral_norm<T: Scalar>(a: &DenseMatrix<T>) -> Result<T> {
    Ok(singular_values(a)?.sigma_max())
}

/// Eigenvalues of a symmetric matrix, descending. Only symmetry of the input is assumed.
pub fn symmetric_eigenvalues<T: Scalar>(m: &DenseMatrix<T>) -> Result<Vec<T>> {
    let n = m.rows();
    if n != m.cols() {
        return Err(Error::InvalidInput("eigenvalues need a square matrix".into()));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite("symmetric_eigenvalues input"));
    }
    let mut out = match n {
        1 => vec![m[(0, 0)]],
        2 => {
            let (hi, lo) = eig2(m[(0, 0)], m[(0, 1)], m[(1, 1)]);
            vec![hi, lo]
        }
        _ => jacobi_eigenvalues(m)?,
    };
    sort_descending(&mut out);
    Ok(out)
}

/// Spectral norm of a symmetric matrix: the largest eigenvalue magnitude.
pub fn symmetric_spectral_norm<T: Scalar>(m: &DenseMatrix<T>) -> Result<T> {
    let eig = symmetric_eigenvalues(m)?;
    Ok(eig.iter().fold(T::zero(), |acc, v| acc.max(v.abs())))
}

/// Closed-form eigenvalues `(high, low)` of `[[a, b], [b, c]]`.
pub(crate) fn eig2<T: Scalar>(a: T, b: T, c: T) -> (T, T) {
    let two: T = cast(2.0);
    let mean = (a + c) / two;
    let half_diff = (a - c) / two;
    let radius = half_diff.hypot(b);
    (mean + radius, mean - radius)
}

/// Cyclic Jacobi rotations on a working copy until the off-diagonal mass vanishes.
fn jacobi_eigenvalues<T: Scalar>(m: &DenseMatrix<T>) -> Result<Vec<T>> {
    let n = m.rows();
    let mut a = m.clone();
    let scale = m.frobenius_norm();
    if scale.is_zero() {
        return Ok(vec![T::zero(); n]);
    }
    let target = T::epsilon() * scale;
    let two: T = cast(2.0);
    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= target {
            return Ok((0..n).map(|i| a[(i, i)]).collect());
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= T::min_positive_value() {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = T::zero();
                a[(q, p)] = T::zero();
            }
        }
    }
    Err(Error::Numeric(
        "Jacobi eigenvalue iteration did not converge".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn identity_spectrum() {
        let s = singular_values(&DenseMatrix::<f64>::identity(3)).unwrap();
        assert!(close(s.values(), &[1.0, 1.0, 1.0], 1e-14));
    }

    #[test]
    fn diagonal_uses_absolute_values() {
        let a = DenseMatrix::<f64>::from_rows(&[vec![3.0, 0.0], vec![0.0, -2.0]]).unwrap();
        let s = singular_values(&a).unwrap();
        assert!(close(s.values(), &[3.0, 2.0], 1e-14));
    }

    #[test]
    fn wide_matrix_matches_hand_computed_gram() {
        // AA^T = [[2,1],[1,2]] has eigenvalues 3 and 1.
        let a = DenseMatrix::<f64>::from_rows(&[vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]]).unwrap();
        let s = singular_values(&a).unwrap();
        assert!(close(s.values(), &[3f64.sqrt(), 1.0], 1e-14));
        let st = singular_values(&a.transpose()).unwrap();
        assert!(close(s.values(), st.values(), 1e-14));
    }

    #[test]
    fn jacobi_matches_known_eigenvalues() {
        // Tridiagonal (2,-1) of size 4: eigenvalues 2 - 2cos(jπ/5).
        let m = DenseMatrix::<f64>::from_fn(4, 4, |i, j| match i.abs_diff(j) {
            0 => 2.0,
            1 => -1.0,
            _ => 0.0,
        });
        let eig = symmetric_eigenvalues(&m).unwrap();
        let mut expected: Vec<f64> = (1..=4)
            .map(|j| 2.0 - 2.0 * (j as f64 * std::f64::consts::PI / 5.0).cos())
            .collect();
        expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert!(close(&eig, &expected, 1e-13));
    }

    #[test]
    fn non_finite_rejected() {
        let mut m = DenseMatrix::<f64>::identity(2);
        m[(0, 1)] = f64::NAN;
        assert!(singular_values(&m).is_err());
    }

    #[test]
    fn single_precision_path() {
        let a = DenseMatrix::<f32>::from_rows(&[vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]]).unwrap();
        let s = singular_values(&a).unwrap();
        assert!((s.sigma_max() - 3f32.sqrt()).abs() < 1e-5);
    }
}
