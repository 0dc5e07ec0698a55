//! Cross-checks of sweep rows against the dense-matrix oracle.

use maserpairs_core::fock::{self, MaserParams};
use maserpairs_core::lewsan::{ls_decompose, ROOT_TOL, SEPARABLE_PART_TOL};
use maserpairs_core::oracle::{
    check_decomposition, matrix_correlations, numeric_ls_search, numeric_trace_norm, ppt_separable,
    LsSearch,
};
use maserpairs_core::pairstate::{self, delta_trace_norm, is_separable, BOUNDARY_TOL};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::SweepError;
use crate::sweep::SweepConfig;

pub const VERIFY_STRIDE: usize = 50;
pub const CORRELATION_TOL: f64 = 1e-10;
pub const TRACE_NORM_TOL: f64 = 1e-12;
pub const SEARCH_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub points_checked: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every `stride`-th row of the sweep against the oracle.
pub fn verify_sweep(config: &SweepConfig, stride: usize) -> Result<VerifyReport, SweepError> {
    config.validate()?;
    let thetas: Vec<f64> = config.grid().into_iter().step_by(stride.max(1)).collect();
    let results: Vec<Vec<String>> = thetas
        .par_iter()
        .enumerate()
        .map(|(i, &theta)| verify_point(config, theta, i as u64))
        .collect::<Result<_, _>>()?;
    Ok(VerifyReport {
        points_checked: thetas.len(),
        failures: results.into_iter().flatten().collect(),
    })
}

/// Oracle checks at one `θ/π`; returns a description of every failed check.
pub fn verify_point(
    config: &SweepConfig,
    theta: f64,
    seed: u64,
) -> Result<Vec<String>, SweepError> {
    let model = |source| SweepError::Model {
        theta_over_pi: theta,
        source,
    };
    let phi = config.phi(theta);
    let params = MaserParams::new(config.nex, config.nu, phi).map_err(model)?;
    let dist = fock::steady_state(&params, &config.trunc).map_err(model)?;
    let corr = pairstate::correlations(&dist, phi).map_err(model)?;
    let mut failures = Vec::new();
    let mut fail = |what: String| failures.push(format!("theta/pi = {theta}: {what}"));

    let dense = matrix_correlations(&dist, phi);
    let diff = [
        corr.s - dense.s,
        corr.t - dense.t,
        corr.u - dense.u,
        corr.v - dense.v,
    ]
    .iter()
    .fold(0.0_f64, |m, d| m.max(d.abs()));
    if diff > CORRELATION_TOL {
        fail(format!("correlations differ from dense traces by {diff:e}"));
    }

    let tn = (delta_trace_norm(&corr) - numeric_trace_norm(&corr)).abs();
    if tn > TRACE_NORM_TOL {
        fail(format!("trace norm differs from spectrum by {tn:e}"));
    }

    let separable = is_separable(&corr);
    if separable != ppt_separable(&corr, BOUNDARY_TOL) {
        fail(format!(
            "closed-form separability {separable} disagrees with PPT"
        ));
    }

    let ls = ls_decompose(&corr).map_err(model)?;
    if !separable {
        let check = check_decomposition(&corr, &ls);
        if check.reconstruction_error > ROOT_TOL {
            fail(format!(
                "reconstruction error {:e}",
                check.reconstruction_error
            ));
        }
        if check.sep_min_eigenvalue < -SEPARABLE_PART_TOL
            || check.sep_pt_min_eigenvalue < -SEPARABLE_PART_TOL
        {
            fail(format!(
                "separable part not PPT: eigenvalues {:e}, {:e}",
                check.sep_min_eigenvalue, check.sep_pt_min_eigenvalue
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let found = numeric_ls_search(&corr, &LsSearch::default(), &mut rng);
        if (found - ls.sep_degree).abs() > SEARCH_TOL {
            fail(format!(
                "numerical search finds S = {found}, closed form gives {}",
                ls.sep_degree
            ));
        }
    }
    Ok(failures)
}
