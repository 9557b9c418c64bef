//! Closed-form approximation of the beta distribution median,
//! (a − 1/3)/(a + b − 2/3), together with exact median oracles and the grid
//! evaluations used to measure its accuracy.
//!
//! Numerical code is generic over [`Real`] (`f32`, `f64`); the closed-form
//! formulas only need [`Scalar`] and also accept exact rationals. The `*64`
//! aliases below fix the scalar to `f64`, which is what the CLI uses.
//!
//! ```
//! use beta_median::{approx_median_default, beta_median_exact, BetaParams, SolverConfig};
//!
//! let p = BetaParams::new(2.0_f64, 5.0).unwrap();
//! let approx = approx_median_default(p).unwrap();
//! let exact = beta_median_exact(p, &SolverConfig::default()).unwrap();
//! assert!(((approx - exact) / exact).abs() < 0.01);
//! ```

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod approximation;
pub mod cli;
pub mod error;
pub mod params;
pub mod scalar;
pub mod solver;
pub mod special;

pub use analysis::{ErrorRecord, GridSpec, RateFitResult};
pub use approximation::{
    approx_median, approx_median_default, beta_mean, beta_mode, exact_median_special, gamma_median_approx,
};
pub use error::{Error, Result};
pub use params::{BetaParams, Offset};
pub use scalar::{Real, Scalar};
pub use solver::{beta_median_exact, gamma_median_exact, SolverConfig};
pub use special::{beta_density, log_gamma, reg_inc_beta, reg_inc_gamma_p};

pub type BetaParams64 = BetaParams<f64>;
pub type Offset64 = Offset<f64>;
pub type SolverConfig64 = SolverConfig<f64>;
pub type GridSpec64 = GridSpec<f64>;
pub type ErrorRecord64 = ErrorRecord<f64>;
pub type RateFitResult64 = RateFitResult<f64>;
