use thiserror::Error;

/// Crate-wide error type. `Invariant` and `TruncationLeak` mean a numerical
/// guarantee was violated at runtime (callers usually cannot recover);
/// everything else is a rejected input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("frequency grid cannot hold the requested mode: {0}")]
    GridTooNarrow(String),

    #[error("operands live on different frequency grids: {0}")]
    GridMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("normalization violated: {0}")]
    Normalization(String),

    #[error("numerical invariant violated: {0}")]
    Invariant(String),

    #[error("Fock space too large: {0}")]
    SpaceTooLarge(String),

    #[error("Fock truncation leak {leak:.3e} exceeds budget {budget:.3e}")]
    TruncationLeak { leak: f64, budget: f64 },
}

impl Error {
    /// True for errors that indicate a numerical guarantee broke mid-run,
    /// as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Invariant(_) | Error::TruncationLeak { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
