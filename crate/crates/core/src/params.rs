//! Parameter types shared across the crate.

use crate::error::{Error, Result};
use crate::scalar::{is_finite, one_third, to_f64, Scalar};

/// NaN and the infinities fail `x − x == 0`.
/// Shape pair (a, b) of a Beta(a, b) distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams<T> {
    a: T,
    b: T,
}

impl<T: Scalar> BetaParams<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if !(is_finite(a) && a > T::zero()) {
            return Err(Error::domain("a", to_f64(a), "shape must be finite and > 0"));
        }
        if !(is_finite(b) && b > T::zero()) {
            return Err(Error::domain("b", to_f64(b), "shape must be finite and > 0"));
        }
        Ok(BetaParams { a, b })
    }

    #[inline]
    pub fn a(&self) -> T {
        self.a
    }

    #[inline]
    pub fn b(&self) -> T {
        self.b
    }

    /// The distribution mean a/(a + b).
    #[inline]
    pub fn mean(&self) -> T {
        self.a / (self.a + self.b)
    }

    #[inline]
    pub fn min_shape(&self) -> T {
        if self.a < self.b {
            self.a
        } else {
            self.b
        }
    }

    /// Beta(b, a).
    #[inline]
    pub fn swapped(&self) -> Self {
        BetaParams { a: self.b, b: self.a }
    }
}

/// The shift d in the family m(a, b; d) = (a − d)/(a + b − 2d), with 0 ≤ d < 1.
///
/// d = 0 gives the mean and d → 1 the mode.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Offset<T>(T);

impl<T: Scalar> Offset<T> {
    pub fn new(d: T) -> Result<Self> {
        if !(is_finite(d) && d >= T::zero() && d < T::one()) {
            return Err(Error::domain("d", to_f64(d), "offset must lie in [0, 1)"));
        }
        Ok(Offset(d))
    }

    /// d = 1/3, the value nearest to one third in `T`.
    pub fn third() -> Self {
        Offset(one_third())
    }

    /// d = 0, which reproduces the mean.
    pub fn zero() -> Self {
        Offset(T::zero())
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }
}
