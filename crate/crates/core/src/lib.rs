//! Steady state of a one-atom maser and the entanglement of two atoms that
//! cross the resonator in immediate succession.
//!
//! The crate is `no_std` (with `alloc`) and purely numerical:
//!
//! - [`fock`]: truncated photon-number distributions, the steady state of the
//!   pumped cavity and the map applied to the field by one excited atom.
//! - [`pairstate`]: the four correlation parameters `(s, t, u, v)` of the
//!   joint two-atom state, its 4×4 matrix, entanglement measures and the
//!   partial-transpose separability test.
//! - [`lewsan`]: decomposition of the pair state into a separable part and a
//!   pure part with maximal separable weight (the degree of separability).
//! - [`oracle`]: independent brute-force routes (dense field operators, a
//!   Jacobi eigensolver, direct numerical maximization of the separable
//!   weight) used to cross-check everything above.

#![no_std]

extern crate alloc;

pub mod density;
pub mod error;
pub mod fock;
pub mod lewsan;
pub mod oracle;
pub mod pairstate;

pub use density::TwoQubitDensity;
pub use error::{Error, Result};
pub use fock::{MaserParams, PhotonDistribution, TruncationPolicy};
pub use lewsan::LsResult;
pub use pairstate::PairCorrelations;
