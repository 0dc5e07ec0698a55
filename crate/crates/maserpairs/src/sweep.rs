//! Parameter sweeps over `θ = φ√N_ex`.

use std::f64::consts::PI;

use maserpairs_core::fock::{self, MaserParams, TruncationPolicy};
use maserpairs_core::lewsan::ls_decompose;
use maserpairs_core::pairstate::{self, degree_of_correlation, delta_trace_norm, is_separable};
use rayon::prelude::*;

use crate::error::SweepError;

/// A sweep of `θ/π` over `(theta_min, theta_max]` in `steps` equal steps.
///
/// When `theta_min` is zero an extra row for `θ = 0` is emitted first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub nex: f64,
    pub nu: f64,
    /// Lower end of the sweep in units of π.
    pub theta_min: f64,
    /// Upper end of the sweep in units of π.
    pub theta_max: f64,
    pub steps: usize,
    pub trunc: TruncationPolicy,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            nex: 1.0,
            nu: 0.0,
            theta_min: 0.0,
            theta_max: 5.0,
            steps: 2000,
            trunc: TruncationPolicy::default(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        let bad = |msg: &str| Err(SweepError::Config(msg.to_string()));
        if !(self.nex.is_finite() && self.nex > 0.0) {
            return bad("nex must be positive and finite");
        }
        if !(self.nu.is_finite() && self.nu >= 0.0) {
            return bad("nu must be non-negative and finite");
        }
        if !(self.theta_min.is_finite() && self.theta_min >= 0.0) {
            return bad("theta-min must be non-negative and finite");
        }
        if !(self.theta_max.is_finite() && self.theta_max > self.theta_min) {
            return bad("theta-max must be finite and larger than theta-min");
        }
        if self.steps < 2 {
            return bad("steps must be at least 2");
        }
        self.trunc
            .validate()
            .map_err(|e| SweepError::Config(e.to_string()))
    }

    /// Pump angle `φ` for a given `θ/π`.
    pub fn phi(&self, theta_over_pi: f64) -> f64 {
        theta_over_pi * PI / self.nex.sqrt()
    }

    /// The `θ/π` values visited, in output order.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.theta_max - self.theta_min;
        let mut out = Vec::with_capacity(self.steps + 1);
        if self.theta_min == 0.0 {
            out.push(0.0);
        }
        out.extend((1..=self.steps).map(|i| self.theta_min + span * i as f64 / self.steps as f64));
        out
    }

    /// Evaluates a single point of this sweep.
    pub fn evaluate(&self, theta_over_pi: f64) -> Result<SweepRecord, SweepError> {
        evaluate_point(self.nex, self.nu, self.phi(theta_over_pi), &self.trunc).map_err(|source| {
            SweepError::Model {
                theta_over_pi,
                source,
            }
        })
    }
}

/// One row of sweep output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub theta_over_pi: f64,
    pub phi_over_pi: f64,
    pub s: f64,
    pub t: f64,
    pub u: f64,
    pub v: f64,
    pub trace_norm: f64,
    pub deg_corr: f64,
    pub separable: bool,
    pub sep_degree: f64,
    pub one_minus_s: f64,
    /// Asymmetry of the pure part; zero for separable states.
    pub p: f64,
    pub nbar: f64,
    pub n_max: usize,
}

impl SweepRecord {
    pub fn correlations(&self) -> pairstate::PairCorrelations {
        pairstate::PairCorrelations::new(self.s, self.t, self.u, self.v)
    }
}

/// Steady state, pair correlations and every derived measure at one `φ`.
pub fn evaluate_point(
    nex: f64,
    nu: f64,
    phi: f64,
    trunc: &TruncationPolicy,
) -> maserpairs_core::Result<SweepRecord> {
    let params = MaserParams::new(nex, nu, phi)?;
    let dist = fock::steady_state(&params, trunc)?;
    let corr = pairstate::correlations(&dist, phi)?;
    let ls = ls_decompose(&corr)?;
    Ok(SweepRecord {
        theta_over_pi: phi * nex.sqrt() / PI,
        phi_over_pi: phi / PI,
        s: corr.s,
        t: corr.t,
        u: corr.u,
        v: corr.v,
        trace_norm: delta_trace_norm(&corr),
        deg_corr: degree_of_correlation(&corr),
        separable: is_separable(&corr),
        sep_degree: ls.sep_degree,
        one_minus_s: ls.one_minus_s(),
        p: ls.p,
        nbar: dist.mean_photon(),
        n_max: dist.n_max(),
    })
}

/// Evaluates the whole sweep in parallel; output order follows
/// [`SweepConfig::grid`] and does not depend on the thread count.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>, SweepError> {
    config.validate()?;
    config
        .grid()
        .into_par_iter()
        .map(|theta| config.evaluate(theta))
        .collect()
}
