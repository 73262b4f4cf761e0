use thiserror::Error;

/// Errors raised by the library. Verdicts such as a squarefree violation or an
/// inconclusive certificate are ordinary values and never show up here.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("polynomial must be monic")]
    NotMonic,

    #[error("polynomial degree {got} outside the supported range {min}..={max}")]
    Degree { got: usize, min: usize, max: usize },

    #[error("input is not squarefree")]
    NotSquarefree,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what}: needs {needed}, budget is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("construction check failed: {0}")]
    Construction(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

/// Checks `needed <= limit`, otherwise returns [`Error::BudgetExceeded`].
pub(crate) fn check_budget(what: &'static str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::BudgetExceeded {
            what,
            needed,
            limit,
        })
    } else {
        Ok(())
    }
}
