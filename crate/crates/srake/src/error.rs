use std::path::PathBuf;

/// Errors surfaced by configuration, selection and experiment plumbing.
///
/// Numerical routines themselves are total over validated inputs; anything
/// that would make them ill-posed is rejected here first.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A configuration field violates one of its invariants.
    #[error("config field `{field}`: {reason}")]
    InvalidConfig { field: String, reason: String },

    /// Inputs whose dimensions disagree (scenario vs. config, etc.).
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Exhaustive search refused: the subset count exceeds the cap.
    #[error("exhaustive search over {combinations} assignments exceeds the cap of {cap}")]
    EnumerationCap { combinations: u128, cap: u64 },

    /// An experiment file failed to parse or validate.
    #[error("experiment spec: {0}")]
    Spec(String),

    /// File I/O with the offending path attached.
    #[error("i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(field: &str, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.to_string(),
            reason: reason.into(),
        }
    }
}
