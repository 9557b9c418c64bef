//! Scalar abstractions.
//!
//! The closed-form formulas only need field arithmetic and ordering, so they
//! are bounded on [`Scalar`] and also work over exact rationals. Everything
//! that evaluates a special function is bounded on [`Real`].

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Ordered field element: enough for the closed-form median formulas.
pub trait Scalar: Num + Copy + PartialOrd + ToPrimitive + Debug {}

impl<T: Num + Copy + PartialOrd + ToPrimitive + Debug> Scalar for T {}

/// Floating point scalar used by the special functions, solvers and grids.
pub trait Real: Scalar + Float + FloatConst + FromPrimitive + ToPrimitive + Display + Send + Sync + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Lossy conversion used for error reporting.
#[inline]
pub(crate) fn to_f64<T: ToPrimitive>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `1/3` computed in the scalar's own arithmetic.
#[inline]
pub fn one_third<T: Scalar>() -> T {
    let one = T::one();
    one / (one + one + one)
}

/// Finiteness without `Float`: x − x is NaN for ±∞ and NaN, and exactly zero
/// otherwise (always true for exact types).
#[allow(clippy::eq_op)]
pub(crate) fn is_finite<T: Scalar>(x: T) -> bool {
    x - x == T::zero()
}
