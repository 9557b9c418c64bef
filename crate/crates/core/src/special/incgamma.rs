//! Regularized lower incomplete gamma function.

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

use super::gamma::{log1pmx, stirling_error};
use super::{iteration_cap, lentz_floor, HALF_LN_2PI};

/// Regularized lower incomplete gamma P(a, x), the unit-scale Gamma(a) CDF.
///
/// Power series below x = a + 1, continued fraction for the complement above.
pub fn reg_inc_gamma_p<T: Real>(a: T, x: T) -> Result<T> {
    if !(a.is_finite() && a > T::zero()) {
        return Err(Error::domain("a", to_f64(a), "shape must be finite and > 0"));
    }
    if !(x >= T::zero()) {
        return Err(Error::domain("x", to_f64(x), "must be >= 0"));
    }
    if x == T::zero() {
        return Ok(T::zero());
    }
    if x.is_infinite() {
        return Ok(T::one());
    }
    if x < a + T::one() {
        series(a, x)
    } else {
        Ok(T::one() - upper_fraction(a, x)?)
    }
}

/// Unit-scale Gamma(a) density at `x > 0`.
pub(crate) fn gamma_density<T: Real>(a: T, x: T) -> T {
    (log_kernel(a, x) + a.ln() - x.ln()).exp()
}

/// ln[x^a e^{−x} / Γ(a + 1)], expanded around x = a.
fn log_kernel<T: Real>(a: T, x: T) -> T {
    let d = x - a;
    let r = d / a;
    let body = if r.abs() <= lit(0.5) {
        a * log1pmx(r)
    } else {
        a * (x.ln() - a.ln()) - d
    };
    body - lit::<T>(HALF_LN_2PI) - lit::<T>(0.5) * a.ln() - stirling_error(a)
}

fn series<T: Real>(a: T, x: T) -> Result<T> {
    // terms fall off like exp(−n²/2a) when x ≈ a
    let cap = iteration_cap(a * lit(100.0));
    let mut ap = a;
    let mut term = T::one();
    let mut sum = T::one();
    for _ in 0..cap {
        ap = ap + T::one();
        term = term * x / ap;
        sum = sum + term;
        if term.abs() <= sum.abs() * T::epsilon() {
            return Ok((sum.ln() + log_kernel(a, x)).exp().min(T::one()));
        }
    }
    Err(Error::Convergence {
        what: "incomplete gamma series",
        iterations: cap,
        lo: to_f64(x),
        hi: to_f64(x),
    })
}

/// Q(a, x) by the Legendre continued fraction, modified Lentz.
fn upper_fraction<T: Real>(a: T, x: T) -> Result<T> {
    let one = T::one();
    let two = one + one;
    let tiny = lentz_floor::<T>();
    let guard = |v: T| if v.abs() < tiny { tiny } else { v };

    let mut b = x + one - a;
    let mut c = tiny.recip();
    let mut d = b.recip();
    let mut h = d;
    let cap = iteration_cap(a);
    for i in 1..=cap {
        let i = T::from_usize(i).unwrap();
        let an = -i * (i - a);
        b = b + two;
        d = guard(an * d + b).recip();
        c = guard(b + an / c);
        let del = d * c;
        h = h * del;
        if (del - one).abs() <= T::epsilon() {
            return Ok((log_kernel(a, x) + a.ln() + h.ln()).exp());
        }
    }
    Err(Error::Convergence {
        what: "incomplete gamma continued fraction",
        iterations: cap,
        lo: to_f64(x),
        hi: to_f64(x),
    })
}
