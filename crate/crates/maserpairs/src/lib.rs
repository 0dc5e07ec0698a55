//! Sweeps of the one-atom maser pair measures over the pump parameter
//! `θ = φ√N_ex`, peak location on the resulting curves, CSV and plot-data
//! output, and an oracle cross-check mode.

pub mod error;
pub mod output;
pub mod peaks;
pub mod sweep;
pub mod verify;

pub use error::SweepError;
pub use peaks::{find_peaks, refine_peaks, Peak, PeakReport};
pub use sweep::{evaluate_point, run_sweep, SweepConfig, SweepRecord};
