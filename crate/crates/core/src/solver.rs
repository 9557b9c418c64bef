//! Exact median oracles: safeguarded Newton iteration on the beta and
//! gamma CDFs.

use crate::approximation::approx_median_default;
use crate::error::{Error, Result};
use crate::params::BetaParams;
use crate::scalar::{lit, one_third, to_f64, Real};
use crate::special::{beta_density_unchecked, gamma_density, reg_inc_beta, reg_inc_gamma_p};

/// Tolerances and iteration cap for the median root finders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<T> {
    /// Accept x once |CDF(x) − 1/2| is at most this.
    pub cdf_tolerance: T,
    /// Accept once the sign-change bracket is at most this wide, relative to
    /// its upper end.
    pub x_tolerance: T,
    pub max_iterations: usize,
}

impl<T: Real> SolverConfig<T> {
    pub fn new(cdf_tolerance: T, x_tolerance: T, max_iterations: usize) -> Result<Self> {
        if !(cdf_tolerance > T::zero() && cdf_tolerance.is_finite()) {
            return Err(Error::domain("cdf_tolerance", to_f64(cdf_tolerance), "must be > 0"));
        }
        if !(x_tolerance > T::zero() && x_tolerance.is_finite()) {
            return Err(Error::domain("x_tolerance", to_f64(x_tolerance), "must be > 0"));
        }
        if max_iterations == 0 {
            return Err(Error::domain("max_iterations", 0.0, "must be >= 1"));
        }
        Ok(SolverConfig {
            cdf_tolerance,
            x_tolerance,
            max_iterations,
        })
    }
}

impl<T: Real> Default for SolverConfig<T> {
    fn default() -> Self {
        SolverConfig {
            cdf_tolerance: lit(1e-13),
            x_tolerance: lit(1e-15),
            max_iterations: 200,
        }
    }
}

/// Root of an increasing function by Newton steps kept inside a sign-change
/// bracket `[lo, hi]` (f(lo) < 0 < f(hi)); a step that leaves the bracket or
/// fails to halve the previous step is replaced by bisection.
///
/// `eval` returns (f(x), f'(x)).
pub(crate) fn safeguarded_newton<T, F>(
    what: &'static str,
    mut eval: F,
    mut lo: T,
    mut hi: T,
    guess: T,
    cfg: &SolverConfig<T>,
) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> Result<(T, T)>,
{
    let two = T::one() + T::one();
    let mut x = if guess > lo && guess < hi {
        guess
    } else {
        bisect(lo, hi)
    };
    let mut step_old = hi - lo;
    let mut best = (T::infinity(), x);
    // once within tolerance, a couple of plain Newton steps settle the last bits
    let mut accepted: Option<T> = None;
    let mut polish = POLISH_STEPS;

    for _ in 0..cfg.max_iterations {
        let (fx, dfx) = eval(x)?;
        if fx.abs() > cfg.cdf_tolerance {
            if let Some(done) = accepted {
                return Ok(done);
            }
        }
        if fx.abs() < best.0 {
            best = (fx.abs(), x);
        }
        if fx < T::zero() {
            lo = x;
        } else if fx > T::zero() {
            hi = x;
        }
        let newton = x - fx / dfx;
        let in_bracket = dfx.is_finite() && dfx > T::zero() && newton > lo && newton < hi;

        if fx.abs() <= cfg.cdf_tolerance {
            accepted = Some(x);
            if polish == 0 || !in_bracket || newton == x {
                return Ok(x);
            }
            polish -= 1;
            x = newton;
            continue;
        }
        if hi - lo <= cfg.x_tolerance * hi.abs() {
            return Ok(best.1);
        }

        let usable = in_bracket && (two * fx).abs() <= (step_old * dfx).abs();
        let next = if usable { newton } else { bisect(lo, hi) };
        step_old = (next - x).abs();
        if next == x {
            // no representable progress left
            return Ok(best.1);
        }
        x = next;
    }
    if let Some(done) = accepted {
        return Ok(done);
    }
    Err(Error::Convergence {
        what,
        iterations: cfg.max_iterations,
        lo: to_f64(lo),
        hi: to_f64(hi),
    })
}

const POLISH_STEPS: usize = 2;

/// Bracket midpoint, taken geometrically while the bracket spans decades.
fn bisect<T: Real>(lo: T, hi: T) -> T {
    let eight = lit::<T>(8.0);
    if lo == T::zero() && hi > T::zero() {
        // walk toward zero fast: medians of very skewed laws can be tiny
        hi * lit(2f64.powi(-8))
    } else if lo > T::zero() && hi > eight * lo {
        (lo.ln() + (hi.ln() - lo.ln()) / (T::one() + T::one())).exp()
    } else {
        lo + (hi - lo) / (T::one() + T::one())
    }
}

/// Exact median of Beta(a, b): the root of I_x(a, b) = 1/2.
///
/// The shape with the smaller median is solved and the result reflected
/// when a > b, so m(a, b) + m(b, a) = 1 holds to rounding.
pub fn beta_median_exact<T: Real>(params: BetaParams<T>, cfg: &SolverConfig<T>) -> Result<T> {
    if params.a() > params.b() {
        return Ok(T::one() - lower_beta_median(params.swapped(), cfg)?);
    }
    lower_beta_median(params, cfg)
}

/// Median for a ≤ b, which lies in (0, 1/2].
fn lower_beta_median<T: Real>(params: BetaParams<T>, cfg: &SolverConfig<T>) -> Result<T> {
    let (a, b) = (params.a(), params.b());
    let half = lit::<T>(0.5);
    let eps = lit::<T>(1e-15);
    let guess = if params.min_shape() > one_third() {
        approx_median_default(params)?.max(eps).min(T::one() - eps)
    } else {
        half
    };
    let eval = |x: T| -> Result<(T, T)> { Ok((reg_inc_beta(x, a, b)? - half, beta_density_unchecked(x, a, b))) };
    safeguarded_newton("beta median solver", eval, T::zero(), T::one(), guess, cfg)
}

/// Exact median M(a) of the unit-scale Gamma(a) distribution.
pub fn gamma_median_exact<T: Real>(a: T, cfg: &SolverConfig<T>) -> Result<T> {
    if !(a.is_finite() && a > T::zero()) {
        return Err(Error::domain("a", to_f64(a), "shape must be finite and > 0"));
    }
    let half = lit::<T>(0.5);
    // the bracket starts above 1e-300 but may expand down to the smallest
    // normal value: for a near 1e-3 the median is 2^{-1/a}-small
    let floor = T::min_positive_value();
    let cdf = |x: T| reg_inc_gamma_p(a, x).map(|p| p - half);

    let mut lo = (a / lit(1e6)).max(lit::<T>(1e-300).max(floor));
    let mut hi = a + lit::<T>(40.0) * a.sqrt() + lit(40.0);
    while cdf(lo)? > T::zero() {
        if lo <= floor {
            return Err(Error::Convergence {
                what: "gamma median bracket",
                iterations: 0,
                lo: to_f64(lo),
                hi: to_f64(hi),
            });
        }
        hi = lo;
        lo = (lo * lit(1e-6)).max(floor);
    }
    while cdf(hi)? < T::zero() {
        lo = hi;
        hi = hi + hi;
    }

    let guess = if a > one_third() {
        a - one_third()
    } else {
        bisect(lo, hi)
    };
    let eval = |x: T| -> Result<(T, T)> { Ok((cdf(x)?, gamma_density(a, x))) };
    safeguarded_newton("gamma median solver", eval, lo, hi, guess, cfg)
}
