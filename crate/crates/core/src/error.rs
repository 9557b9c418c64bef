use thiserror::Error;

/// Errors raised by the special functions, solvers and analysis grids.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {name} = {value} ({reason})")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A series, continued fraction or root finder ran out of iterations.
    #[error("{what} did not converge after {iterations} iterations (last bracket [{lo}, {hi}])")]
    Convergence {
        what: &'static str,
        iterations: usize,
        lo: f64,
        hi: f64,
    },

    /// A log-log fit could not be formed.
    #[error("fit error: {0}")]
    Fit(String),

    /// Failure at one point of an analysis grid.
    #[error("at a = {a}, b = {b}: {source}")]
    GridPoint {
        a: f64,
        b: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: impl Into<f64>, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value: value.into(),
            reason,
        }
    }

    /// The underlying error with any grid annotation stripped.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::GridPoint { source, .. } => source.root_cause(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
