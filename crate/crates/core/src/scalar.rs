//! Scalar abstraction for the numeric core.
//!
//! Every numeric kernel in this crate (interpolation, filters, texture
//! statistics, the lasso solver, rank statistics) is written against [`Real`]
//! so the same code runs in `f32` or `f64`. The crate root re-exports `f64`
//! aliases for the common types; `f64` is what the pipeline and the file
//! formats use.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable by all numeric kernels.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Shorthand for lifting an `f64` constant into the scalar type.
    fn c(v: f64) -> Self {
        Self::from_f64(v).expect("finite constant")
    }

    /// Lossy view as `f64` (exact for `f32`/`f64`).
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }

    /// Lift a usize count.
    fn of_usize(v: usize) -> Self {
        Self::from_usize(v).expect("count fits scalar")
    }
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Sum<T>
        + Default
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Sorts a slice of finite scalars ascending.
///
/// Panics on NaN; callers uphold the no-NaN invariant before sorting.
pub fn sort_ascending<R: Real>(values: &mut [R]) {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
}

/// log2 with the 0·log0 := 0 convention used by every entropy in the crate.
#[inline]
pub fn xlog2<R: Real>(p: R) -> R {
    if p > R::zero() {
        p * p.log2()
    } else {
        R::zero()
    }
}
