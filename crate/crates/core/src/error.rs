use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid maser parameters: {0}")]
    InvalidParams(&'static str),

    #[error("invalid truncation policy: {0}")]
    InvalidTruncation(&'static str),

    #[error("invalid photon distribution: {0}")]
    InvalidDistribution(&'static str),

    /// The photon-number cap was reached before the tail mass dropped below
    /// the requested bound.
    #[error("photon-number cap {n_cap} reached before tail bound was met")]
    TruncationOverflow { n_cap: usize },

    /// Positivity of the pair state is violated beyond tolerance. This points
    /// at a numerical problem rather than bad input.
    #[error("pair state violates positivity (residuals {upper:e}, {lower:e})")]
    InvalidState { upper: f64, lower: f64 },

    #[error("no admissible root for the pure-part asymmetry p")]
    NoValidRoot,

    #[error("decomposition check failed: {what} (min eigenvalue {min_eigenvalue:e})")]
    DecompositionInvalid {
        what: &'static str,
        min_eigenvalue: f64,
    },
}
