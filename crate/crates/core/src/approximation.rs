//! Closed-form median formulas.
//!
//! Apart from [`exact_median_special`], everything here needs only field
//! arithmetic, so it works over exact rationals as well as floats.

use crate::error::{Error, Result};
use crate::params::{BetaParams, Offset};
use crate::scalar::{is_finite, one_third, to_f64, Real, Scalar};

/// m(a, b; d) = (a − d)/(a + b − 2d).
///
/// Requires min(a, b) > d, which keeps the value strictly inside (0, 1).
pub fn approx_median<T: Scalar>(params: BetaParams<T>, d: Offset<T>) -> Result<T> {
    let d = d.get();
    if params.min_shape() <= d {
        return Err(Error::domain(
            "min(a, b)",
            to_f64(params.min_shape()),
            "approximation needs both shapes above the offset d",
        ));
    }
    let (a, b) = (params.a(), params.b());
    Ok((a - d) / (a + b - (d + d)))
}

/// (a − 1/3)/(a + b − 2/3).
pub fn approx_median_default<T: Scalar>(params: BetaParams<T>) -> Result<T> {
    approx_median(params, Offset::third())
}

/// Exact median where a closed form exists: 2^(−1/a) when b = 1,
/// 1 − 2^(−1/b) when a = 1, and 1/2 when a = b.
pub fn exact_median_special<T: Real>(params: BetaParams<T>) -> Option<T> {
    let one = T::one();
    let two = one + one;
    let (a, b) = (params.a(), params.b());
    if b == one {
        Some(two.powf(-a.recip()))
    } else if a == one {
        // 1 − 2^(−1/b) = −expm1(−ln2 / b)
        Some(-(-T::LN_2() / b).exp_m1())
    } else if a == b {
        Some(one / two)
    } else {
        None
    }
}

/// a/(a + b).
pub fn beta_mean<T: Scalar>(params: BetaParams<T>) -> T {
    params.mean()
}

/// (a − 1)/(a + b − 2); only defined when both shapes exceed 1.
pub fn beta_mode<T: Scalar>(params: BetaParams<T>) -> Result<T> {
    let one = T::one();
    if params.min_shape() <= one {
        return Err(Error::domain(
            "min(a, b)",
            to_f64(params.min_shape()),
            "mode requires both shapes > 1",
        ));
    }
    let (a, b) = (params.a(), params.b());
    Ok((a - one) / (a + b - one - one))
}

/// Asymptotic unit-scale gamma median a − 1/3, for a > 1/3.
pub fn gamma_median_approx<T: Scalar>(a: T) -> Result<T> {
    let third = one_third::<T>();
    if !(a > third) || !is_finite(a) {
        return Err(Error::domain("a", to_f64(a), "gamma median asymptote needs a > 1/3"));
    }
    Ok(a - third)
}
