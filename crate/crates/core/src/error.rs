use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature hit its refinement limit before meeting the tolerance.
    #[error("quadrature did not converge: error estimate {achieved:e} exceeds target {target:e}")]
    Convergence { achieved: f64, target: f64 },

    /// A closed form that must produce an integer produced a proper fraction.
    /// This is an implementation bug, never a user error.
    #[error("internal error: {path} produced non-integral value {value} for p={p}, n={n}")]
    NonIntegral {
        path: &'static str,
        p: u32,
        n: u64,
        value: String,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
