use thiserror::Error;

/// Errors raised by the kernel, the witness constructions and the harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Vector or matrix shapes do not agree.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Two flats (or a flat and a point) live in different quadratic spaces.
    #[error("operands live in different ambient spaces")]
    AmbientMismatch,

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Malformed user input: bad flags, out-of-range parameters, invalid forms.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// The requested dimensions admit no orthogonal configuration.
    #[error("unsatisfiable parameters: k1 + k2 - m = {required} exceeds dimension {dim}")]
    Unsatisfiable { required: usize, dim: usize },

    /// Random generation kept drawing degenerate configurations.
    #[error("generation failed after {attempts} attempts: {what}")]
    Generation { what: String, attempts: usize },

    /// A kernel invariant failed; indicates a bug rather than bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
