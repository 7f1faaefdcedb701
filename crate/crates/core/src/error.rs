use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("malformed algebra: {0}")]
    Malformed(String),

    #[error("vector length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),

    #[error("{context}: {message}")]
    Format { context: String, message: String },

    #[error("matrix is not skew-symmetric at ({i}, {j})")]
    NotSkew { i: usize, j: usize },

    #[error("{what} has size {found}, expected {expected}")]
    SizeMismatch { what: &'static str, expected: usize, found: usize },

    /// `β_ζ` came out asymmetric: `J` or `ζ` is not compatible with the bracket.
    #[error("beta form is not symmetric at v-basis pair ({u}, {v}); J or zeta is incompatible")]
    Incompatible { u: String, v: String },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl AlgebraError {
    pub fn format(context: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Format { context: context.into(), message: message.into() }
    }
}
