//! Hard thresholding and support-set algebra.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::linalg::DenseVector;
use crate::scalar::Scalar;

/// Strictly increasing set of indices into a signal of length `ambient_len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportSet {
    ambient_len: usize,
    indices: Vec<usize>,
}

impl SupportSet {
    /// Builds a support from arbitrary indices; they are sorted and deduplicated.
    pub fn new(ambient_len: usize, mut indices: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= ambient_len) {
            return Err(Error::InvalidInput(format!(
                "index {bad} out of range for length {ambient_len}"
            )));
        }
        indices.sort_unstable();
        indices.dedup();
        Ok(Self {
            ambient_len,
            indices,
        })
    }

    pub fn empty(ambient_len: usize) -> Self {
        Self {
            ambient_len,
            indices: Vec::new(),
        }
    }

    pub fn full(ambient_len: usize) -> Self {
        Self {
            ambient_len,
            indices: (0..ambient_len).collect(),
        }
    }

    pub fn ambient_len(&self) -> usize {
        self.ambient_len
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        check_len("support union", self.ambient_len, other.ambient_len)?;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() || j < other.len() {
            match (self.indices.get(i), other.indices.get(j)) {
                (Some(&a), Some(&b)) => match a.cmp(&b) {
                    Ordering::Less => {
                        out.push(a);
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push(b);
                        j += 1;
                    }
                    Ordering::Equal => {
                        out.push(a);
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&a), None) => {
                    out.push(a);
                    i += 1;
                }
                (None, Some(&b)) => {
                    out.push(b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ok(Self {
            ambient_len: self.ambient_len,
            indices: out,
        })
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.ambient_len - self.len());
        let mut next = self.indices.iter().peekable();
        for i in 0..self.ambient_len {
            if next.peek() == Some(&&i) {
                next.next();
            } else {
                out.push(i);
            }
        }
        Self {
            ambient_len: self.ambient_len,
            indices: out,
        }
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.indices.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Vector stored by its nonzero entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseVector<T> {
    support: SupportSet,
    values: Vec<T>,
}

impl<T: Scalar> SparseVector<T> {
    pub fn zeros(ambient_len: usize) -> Self {
        Self {
            support: SupportSet::empty(ambient_len),
            values: Vec::new(),
        }
    }

    /// Builds from explicit `(index, value)` pairs. Entries must be finite and nonzero.
    pub fn new(ambient_len: usize, entries: Vec<(usize, T)>) -> Result<Self> {
        let mut entries = entries;
        entries.sort_by_key(|&(i, _)| i);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput("duplicate sparse index".into()));
        }
        if entries.iter().any(|&(_, v)| v.is_zero() || !v.is_finite()) {
            return Err(Error::InvalidInput(
                "sparse values must be nonzero and finite".into(),
            ));
        }
        let (indices, values): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        let support = SupportSet::new(ambient_len, indices)?;
        Ok(Self { support, values })
    }

    /// Aligns `values` with the indices of `support`, dropping exact zeros.
    pub(crate) fn from_support_values(support: SupportSet, values: Vec<T>) -> Self {
        debug_assert_eq!(support.len(), values.len());
        if values.iter().all(|v| !v.is_zero()) {
            return Self { support, values };
        }
        let ambient_len = support.ambient_len;
        let (indices, values): (Vec<_>, Vec<_>) = support
            .indices
            .into_iter()
            .zip(values)
            .filter(|(_, v)| !v.is_zero())
            .unzip();
        Self {
            support: SupportSet {
                ambient_len,
                indices,
            },
            values,
        }
    }

    pub fn from_dense(dense: &DenseVector<T>) -> Self {
        let (indices, values) = dense
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, &v)| (i, v))
            .unzip();
        Self {
            support: SupportSet {
                ambient_len: dense.len(),
                indices,
            },
            values,
        }
    }

    pub fn to_dense(&self) -> DenseVector<T> {
        let mut out = DenseVector::zeros(self.ambient_len());
        for (&i, &v) in self.support.indices.iter().zip(&self.values) {
            out[i] = v;
        }
        out
    }

    pub fn ambient_len(&self) -> usize {
        self.support.ambient_len
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `‖x‖₀`.
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, T)> + '_ {
        self.support.indices.iter().copied().zip(self.values.iter().copied())
    }

    pub fn norm2(&self) -> T {
        crate::linalg::norm2(&self.values)
    }

    /// `‖self - other‖₂` over the union of both supports.
    pub fn distance(&self, other: &Self) -> T {
        let mut acc = T::zero();
        let (mut a, mut b) = (self.iter().peekable(), other.iter().peekable());
        loop {
            let d = match (a.peek().copied(), b.peek().copied()) {
                (Some((i, x)), Some((j, y))) => match i.cmp(&j) {
                    Ordering::Less => {
                        a.next();
                        x
                    }
                    Ordering::Greater => {
                        b.next();
                        -y
                    }
                    Ordering::Equal => {
                        a.next();
                        b.next();
                        x - y
                    }
                },
                (Some((_, x)), None) => {
                    a.next();
                    x
                }
                (None, Some((_, y))) => {
                    b.next();
                    -y
                }
                (None, None) => break,
            };
            acc = acc + d * d;
        }
        acc.sqrt()
    }
}

/// `H_k(z)`: keeps the `k` largest-magnitude entries of `z`.
///
/// Ties in magnitude keep the smaller index. Exact zeros are never kept, so the
/// result has `min(k, ‖z‖₀)` nonzeros.
pub fn hard_threshold<T: Scalar>(z: &DenseVector<T>, k: usize) -> Result<SparseVector<T>> {
    if k > z.len() {
        return Err(Error::InvalidInput(format!(
            "sparsity {k} exceeds vector length {}",
            z.len()
        )));
    }
    let mut order: Vec<usize> = (0..z.len()).filter(|&i| !z[i].is_zero()).collect();
    let by_magnitude = |&a: &usize, &b: &usize| {
        z[b].abs()
            .partial_cmp(&z[a].abs())
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    };
    if order.len() > k {
        if k > 0 {
            order.select_nth_unstable_by(k - 1, by_magnitude);
        }
        order.truncate(k);
    }
    order.sort_unstable();
    let values = order.iter().map(|&i| z[i]).collect();
    Ok(SparseVector {
        support: SupportSet {
            ambient_len: z.len(),
            indices: order,
        },
        values,
    })
}

/// Nonzero positions of a dense vector.
pub fn support_of<T: Scalar>(v: &DenseVector<T>) -> SupportSet {
    SupportSet {
        ambient_len: v.len(),
        indices: (0..v.len()).filter(|&i| !v[i].is_zero()).collect(),
    }
}

/// Copy of `x` that agrees on `support` and is zero elsewhere.
pub fn restrict<T: Scalar>(x: &DenseVector<T>, support: &SupportSet) -> Result<DenseVector<T>> {
    check_len("restrict", x.len(), support.ambient_len())?;
    let mut out = DenseVector::zeros(x.len());
    for &i in support.indices() {
        out[i] = x[i];
    }
    Ok(out)
}
