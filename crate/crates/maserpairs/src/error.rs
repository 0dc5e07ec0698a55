use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep configuration: {0}")]
    Config(String),

    #[error("at theta/pi = {theta_over_pi}: {source}")]
    Model {
        theta_over_pi: f64,
        #[source]
        source: maserpairs_core::Error,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}: malformed record: {reason}")]
    Parse { path: PathBuf, reason: String },
}

impl SweepError {
    /// Process exit code: 3 for truncation overflow, 2 for validation or
    /// decomposition failures, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            SweepError::Model {
                source: maserpairs_core::Error::TruncationOverflow { .. },
                ..
            } => 3,
            SweepError::Config(_) | SweepError::Model { .. } => 2,
            SweepError::Io { .. } | SweepError::Csv { .. } | SweepError::Parse { .. } => 1,
        }
    }
}
