use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::scalar::Scalar;

/// Dense real vector with finite entries.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DenseVector<T> {
    entries: Vec<T>,
}

impl<T: Scalar> DenseVector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("vector must be nonempty".into()));
        }
        if !entries.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("vector entries"));
        }
        Ok(Self { entries })
    }

    /// Wraps `entries` without validation.
    pub(crate) fn from_vec_unchecked(entries: Vec<T>) -> Self {
        Self { entries }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            entries: vec![T::zero(); len],
        }
    }

    pub fn from_f64(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| T::from_f64_lossy(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.entries
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.entries
    }

    pub fn into_vec(self) -> Vec<T> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.entries.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|v| v.is_finite())
    }

    pub fn dot(&self, other: &Self) -> T {
        dot(&self.entries, &other.entries)
    }

    pub fn norm2(&self) -> T {
        norm2(&self.entries)
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self::from_vec_unchecked(self.entries.iter().map(|&v| v * factor).collect())
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: T, other: &Self) -> Result<Self> {
        check_len("add_scaled", self.len(), other.len())?;
        Ok(Self::from_vec_unchecked(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + factor * b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(-T::one(), other)
    }

    /// Number of nonzero entries.
    pub fn count_nonzero(&self) -> usize {
        self.entries.iter().filter(|v| !v.is_zero()).count()
    }
}

impl<T> Index<usize> for DenseVector<T> {
    type Output = T;
    fn index(&self, index: usize) -> &T {
        &self.entries[index]
    }
}

impl<T> IndexMut<usize> for DenseVector<T> {
    fn index_mut(&mut self, index: usize) -> &mut T {
        &mut self.entries[index]
    }
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

pub(crate) fn norm2<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Dense row-major real matrix with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        check_len("matrix entries", rows * cols, entries.len())?;
        if !entries.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub(crate) fn from_vec_unchecked(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_vec_unchecked(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            out[(i, i)] = T::one();
        }
        out
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::from_vec_unchecked(rows, cols, entries)
    }

    /// Builds a matrix from nested `f64` rows; convenient in tests.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&v| T::from_f64_lossy(v))
            .collect();
        Self::new(r, c, entries)
    }

    pub fn diagonal(values: &[T]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i] } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|v| v.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// `A x`.
    pub fn mul_vec(&self, x: &DenseVector<T>) -> Result<DenseVector<T>> {
        check_len("matrix-vector product", self.cols, x.len())?;
        Ok(DenseVector::from_vec_unchecked(
            (0..self.rows).map(|i| dot(self.row(i), x.as_slice())).collect(),
        ))
    }

    /// `A^T x`.
    pub fn mul_vec_transposed(&self, x: &DenseVector<T>) -> Result<DenseVector<T>> {
        check_len("transposed matrix-vector product", self.rows, x.len())?;
        let mut out = vec![T::zero(); self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = *o + a * xi;
            }
        }
        Ok(DenseVector::from_vec_unchecked(out))
    }

    /// `A x` where `x` is given by its nonzero entries.
    pub(crate) fn mul_sparse(&self, indices: &[usize], values: &[T]) -> DenseVector<T> {
        DenseVector::from_vec_unchecked(
            (0..self.rows)
                .map(|i| {
                    let row = self.row(i);
                    indices
                        .iter()
                        .zip(values)
                        .fold(T::zero(), |acc, (&j, &v)| acc + row[j] * v)
                })
                .collect(),
        )
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        check_len("matrix product", self.cols, other.rows)?;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (l, &a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let src = other.row(l);
                let dst = &mut out.entries[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d = *d + a * b;
                }
            }
        }
        Ok(out)
    }

    /// `A A^T` (rows × rows).
    pub fn gram_rows(&self) -> Self {
        let m = self.rows;
        let mut out = Self::zeros(m, m);
        for i in 0..m {
            for j in 0..=i {
                let v = dot(self.row(i), self.row(j));
                out[(i, j)] = v;
                out[(j, i)] = v;
            }
        }
        out
    }

    /// `A^T A` (cols × cols).
    pub fn gram_cols(&self) -> Self {
        let n = self.cols;
        let mut out = Self::zeros(n, n);
        for r in 0..self.rows {
            let row = self.row(r);
            for i in 0..n {
                let a = row[i];
                if a.is_zero() {
                    continue;
                }
                for j in 0..=i {
                    out.entries[i * n + j] = out.entries[i * n + j] + a * row[j];
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                out.entries[j * n + i] = out.entries[i * n + j];
            }
        }
        out
    }

    /// Submatrix of the columns listed in `columns`, in that order.
    pub fn select_columns(&self, columns: &[usize]) -> Result<Self> {
        if let Some(&bad) = columns.iter().find(|&&c| c >= self.cols) {
            return Err(Error::InvalidInput(format!(
                "column index {bad} out of range for {} columns",
                self.cols
            )));
        }
        Ok(Self::from_fn(self.rows, columns.len(), |i, j| {
            self[(i, columns[j])]
        }))
    }

    pub fn add_diagonal(&self, shift: T) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput("diagonal shift needs a square matrix".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] = out[(i, i)] + shift;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_len("matrix difference rows", self.rows, other.rows)?;
        check_len("matrix difference cols", self.cols, other.cols)?;
        Ok(Self::from_vec_unchecked(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        ))
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self::from_vec_unchecked(
            self.rows,
            self.cols,
            self.entries.iter().map(|&a| a * factor).collect(),
        )
    }

    pub fn frobenius_norm(&self) -> T {
        norm2(&self.entries)
    }

    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, &v| acc.max(v.abs()))
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.entries[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.entries[i * self.cols + j]
    }
}
