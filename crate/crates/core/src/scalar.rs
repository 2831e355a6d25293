use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar used throughout the toolkit: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Relative pivot threshold below which a Cholesky pivot of a pursuit
    /// system is treated as rank deficient.
    fn rank_tolerance() -> Self;

    /// Lossy conversion from `f64`; used for constants and sampled values.
    fn from_f64_lossy(value: f64) -> Self {
        <Self as FromPrimitive>::from_f64(value).unwrap_or_else(Self::nan)
    }

    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn rank_tolerance() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn rank_tolerance() -> Self {
        1e-5
    }
}

/// Shorthand for `T::from_f64_lossy`.
#[inline]
pub(crate) fn cast<T: Scalar>(value: f64) -> T {
    T::from_f64_lossy(value)
}
