use thiserror::Error;

/// Errors shared by every layer of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates an operation's contract.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Mismatched operator or layout dimensions.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Input data fails a structural validity check.
    #[error("validation failed: {0}")]
    Validation(String),

    /// Input is numerically degenerate (e.g. all entries below tolerance).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A unitary does not preserve the code space.
    #[error("not a logical operator{}: residual {residual:.3e} exceeds tolerance", gate_label(.label))]
    NotLogical {
        residual: f64,
        /// Label of the offending gate, when known.
        label: Option<String>,
    },

    /// Requested Hilbert dimension exceeds the dense-matrix cap.
    #[error("total dimension {requested} exceeds the supported maximum {max}")]
    ResourceLimit { requested: usize, max: usize },
}

fn gate_label(label: &Option<String>) -> String {
    match label {
        Some(s) => format!(" ({s})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
