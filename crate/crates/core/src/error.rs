use thiserror::Error;

/// Errors raised by the numerical modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{method} did not converge after {iterations} iterations")]
    NoConvergence { method: &'static str, iterations: usize },

    #[error("only {found} of {wanted} eigenvalues lie below the Gershgorin bound {bound}")]
    Bracketing { wanted: usize, found: usize, bound: f64 },

    #[error("homogeneous solutions are linearly dependent (|C| = {0:e})")]
    DependentSolutions(f64),

    #[error(
        "I - kappa K is numerically singular at kappa = {kappa} (rcond ~ {rcond:e}){}",
        nearest.map(|k| format!("; nearest characteristic value {k}")).unwrap_or_default()
    )]
    NearSingular {
        kappa: f64,
        rcond: f64,
        nearest: Option<f64>,
    },

    #[error("{0} is not representable as a finite f64")]
    Overflow(&'static str),
}

impl Error {
    /// True for errors caused by inputs outside an operation's preconditions,
    /// as opposed to a numerical failure on valid inputs.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Domain { .. } | Error::InvalidParameter(_))
    }

    pub(crate) fn domain(what: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain { what, value, domain }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
