//! Special functions behind every median oracle.
//!
//! | Function | Value |
//! |----------|-------|
//! | [`log_gamma`] | ln Γ(x) |
//! | [`reg_inc_beta`] | I_x(a, b), the Beta(a, b) CDF |
//! | [`beta_density`] | Beta(a, b) density |
//! | [`reg_inc_gamma_p`] | P(a, x), the unit-scale Gamma(a) CDF |

use crate::scalar::{lit, Real};

mod beta;
mod gamma;
mod incgamma;

pub use beta::{beta_density, reg_inc_beta};
pub use gamma::log_gamma;
pub use incgamma::reg_inc_gamma_p;

pub(crate) use beta::density_unchecked as beta_density_unchecked;
pub(crate) use incgamma::gamma_density;

/// Base iteration cap for the continued fractions and series.
pub const MAX_CF_ITERATIONS: usize = 500;

/// Iteration cap for shapes summing to `scale`: the fractions need on the
/// order of √scale terms near the center of the distribution, which passes
/// the base cap once shapes reach about 10⁶.
fn iteration_cap<T: Real>(scale: T) -> usize {
    MAX_CF_ITERATIONS + scale.sqrt().ceil().to_usize().unwrap_or(usize::MAX / 4)
}

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_7;

/// Floor applied to Lentz denominators.
fn lentz_floor<T: Real>() -> T {
    lit::<T>(1e-300).max(T::min_positive_value())
}
