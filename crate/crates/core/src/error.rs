use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed number, unknown unit, or a value violating a type invariant.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Lookup outside the tabulated gold correction data.
    #[error("out of table range: {0}")]
    OutOfTableRange(String),

    #[error("summation did not converge within {max_terms} Matsubara terms (tau = {tau})")]
    Convergence { max_terms: usize, tau: f64 },

    /// Root finding or bracketing failure.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// Process exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) | Error::Domain(_) => 2,
            Error::OutOfTableRange(_) => 3,
            Error::Convergence { .. } | Error::Numerical(_) => 4,
        }
    }
}
