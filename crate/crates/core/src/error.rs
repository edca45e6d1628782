use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// The variants fall into three families that the command-line front end maps
/// onto distinct exit codes: caller mistakes (`InvalidParams`,
/// `InvalidLabel`, `Precondition`), resource limits (`PrecisionExhausted`,
/// `SearchBoundExceeded`, `NeedsMorePlaces`), and failed mathematical
/// assertions (`Consistency`, `NonUnique`, `Falsified`).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("value is not rational: {0}")]
    NotRational(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid irrep label: {0}")]
    InvalidLabel(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("t-adic precision {precision} exhausted before a nonzero leading term")]
    PrecisionExhausted { precision: usize },

    #[error("no witness found within degree bound {degree_bound} and depth bound {depth_bound}")]
    SearchBoundExceeded {
        degree_bound: usize,
        depth_bound: usize,
    },

    #[error("factorization witness is not unique: {count} witnesses found")]
    NonUnique { count: usize },

    #[error("Hecke eigensystems not separated by the supplied places: {0}")]
    NeedsMorePlaces(String),

    #[error("falsified: {0}")]
    Falsified(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParams(_) | Error::InvalidLabel(_) | Error::Precondition(_) => 2,
            Error::PrecisionExhausted { .. }
            | Error::SearchBoundExceeded { .. }
            | Error::NeedsMorePlaces(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
