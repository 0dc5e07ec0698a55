//! Diagonal photon-number representation of the cavity field.
//!
//! A resonant excited atom maps `|e, n⟩ → c_n |e, n⟩ − i s_n |g, n+1⟩` with
//! `c_n = cos(φ√(n+1))` and `s_n = sin(φ√(n+1))`. Starting from a diagonal
//! field state every quantity needed downstream stays diagonal, so the field
//! is carried around as a list of photon-number probabilities.

use alloc::vec;
use alloc::vec::Vec;

use libm::{cos, exp, log, sin, sqrt};

use crate::error::{Error, Result};

/// Physical knobs of the maser.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaserParams {
    /// Pump rate: mean number of atoms crossing the cavity per photon lifetime.
    pub nex: f64,
    /// Mean number of thermal photons.
    pub nu: f64,
    /// Accumulated Rabi angle in radians.
    pub phi: f64,
}

impl MaserParams {
    pub fn new(nex: f64, nu: f64, phi: f64) -> Result<Self> {
        let params = Self { nex, nu, phi };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.nex.is_finite() && self.nu.is_finite() && self.phi.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite"));
        }
        if self.nex < 0.0 {
            return Err(Error::InvalidParams("nex must be non-negative"));
        }
        if self.nu < 0.0 {
            return Err(Error::InvalidParams("nu must be non-negative"));
        }
        if self.phi < 0.0 {
            return Err(Error::InvalidParams("phi must be non-negative"));
        }
        Ok(())
    }
}

/// Where to cut the infinite photon-number ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Bound on the omitted probability mass relative to the kept mass.
    pub tail_eps: f64,
    /// Hard maximum photon number.
    pub n_cap: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            tail_eps: 1e-12,
            n_cap: 10_000,
        }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.tail_eps > 0.0 && self.tail_eps < 1.0) {
            return Err(Error::InvalidTruncation("tail_eps must lie in (0, 1)"));
        }
        if self.n_cap < 1 {
            return Err(Error::InvalidTruncation("n_cap must be at least 1"));
        }
        Ok(())
    }
}

/// Photon-number probabilities `p_0 … p_{n_max}` of a diagonal field state.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    probs: Vec<f64>,
    tail_bound: f64,
}

impl PhotonDistribution {
    pub fn vacuum() -> Self {
        Self {
            probs: vec![1.0],
            tail_bound: 0.0,
        }
    }

    /// The Fock state `|n⟩`.
    pub fn number_state(n: usize) -> Self {
        let mut probs = vec![0.0; n + 1];
        probs[n] = 1.0;
        Self {
            probs,
            tail_bound: 0.0,
        }
    }

    /// Normalizes arbitrary non-negative weights into a distribution.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidDistribution("no weights"));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidDistribution(
                "weights must be finite and non-negative",
            ));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidDistribution("weights sum to zero"));
        }
        let probs = weights.into_iter().map(|w| w / total).collect();
        Ok(Self {
            probs,
            tail_bound: 0.0,
        })
    }

    /// Geometric thermal distribution `p_n = (1 − x) xⁿ` with `x = ν/(ν+1)`,
    /// cut where the remaining mass `x^{n_max+1}` drops below `tail_eps`.
    pub fn thermal(nu: f64, trunc: &TruncationPolicy) -> Result<Self> {
        if !(nu.is_finite() && nu >= 0.0) {
            return Err(Error::InvalidParams("nu must be finite and non-negative"));
        }
        trunc.validate()?;
        let ratio = nu / (nu + 1.0);
        let mut probs = vec![1.0 - ratio];
        let mut power = 1.0;
        loop {
            power *= ratio;
            if power < trunc.tail_eps {
                break;
            }
            if probs.len() > trunc.n_cap {
                return Err(Error::TruncationOverflow { n_cap: trunc.n_cap });
            }
            probs.push((1.0 - ratio) * power);
        }
        let total: f64 = probs.iter().sum();
        probs.iter_mut().for_each(|p| *p /= total);
        Ok(Self {
            probs,
            tail_bound: power,
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of `n` photons; zero beyond the truncation.
    pub fn prob(&self, n: usize) -> f64 {
        self.probs.get(n).copied().unwrap_or(0.0)
    }

    /// Upper bound on the mass dropped by the truncation, relative to the total.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn n_max(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean_photon(&self) -> f64 {
        mean_photon(self)
    }
}

/// Diagonal action of the cosine and sine operators on `|n⟩`:
/// `C|n⟩ = c_n|n⟩`, `S|n⟩ = s_n|n+1⟩`.
pub fn rabi_coefficients(n: usize, phi: f64) -> (f64, f64) {
    let angle = phi * sqrt((n + 1) as f64);
    (cos(angle), sin(angle))
}

/// Steady-state photon distribution of the pumped, damped cavity.
///
/// Successive ratios are `p_n / p_{n−1} = ν/(ν+1) + N_ex/(ν+1) · sin²(φ√n)/n`.
/// The product is accumulated as a log-sum so long ladders cannot underflow.
/// Truncation stops at the first `n_max` whose rigorous tail bound falls below
/// `tail_eps` times the kept mass; for `n > N_ex − 1` every later ratio is at
/// most `r = (ν + N_ex/(n+1))/(ν+1) < 1`, which bounds the tail geometrically.
pub fn steady_state(params: &MaserParams, trunc: &TruncationPolicy) -> Result<PhotonDistribution> {
    params.validate()?;
    trunc.validate()?;
    if params.phi == 0.0 {
        // sin²(φ√n)/n → φ² → 0: the atoms decouple and only the thermal bath is left.
        return PhotonDistribution::thermal(params.nu, trunc);
    }

    let ratio = params.nu / (params.nu + 1.0);
    let pump = params.nex / (params.nu + 1.0);

    // log p_n (unnormalized, p_0 = 1), running max and sum of exp(log − max).
    let mut logs = vec![0.0_f64];
    let mut max_log = 0.0_f64;
    let mut scaled_sum = 1.0_f64;
    let mut tail_bound = 0.0_f64;

    let mut n = 1usize;
    loop {
        let (_, s) = rabi_coefficients(n - 1, params.phi);
        let factor = ratio + pump * s * s / n as f64;
        if factor == 0.0 {
            // Exact trapping at ν = 0: nothing above n can be populated.
            break;
        }
        let next = logs[n - 1] + log(factor);

        let bound_ratio = ratio + pump / (n + 1) as f64;
        if bound_ratio < 1.0 {
            let tail = exp(next - max_log) / (1.0 - bound_ratio);
            if tail < trunc.tail_eps * scaled_sum {
                tail_bound = tail / scaled_sum;
                break;
            }
        }
        if n > trunc.n_cap {
            return Err(Error::TruncationOverflow { n_cap: trunc.n_cap });
        }

        if next > max_log {
            scaled_sum *= exp(max_log - next);
            max_log = next;
        }
        scaled_sum += exp(next - max_log);
        logs.push(next);
        n += 1;
    }

    let probs: Vec<f64> = logs.iter().map(|l| exp(l - max_log)).collect();
    let total: f64 = probs.iter().sum();
    Ok(PhotonDistribution {
        probs: probs.into_iter().map(|p| p / total).collect(),
        tail_bound,
    })
}

/// Field state left behind by one excited atom:
/// `p'_n = cos²(φ√(n+1)) p_n + sin²(φ√n) p_{n−1}`.
pub fn apply_atom_passage(dist: &PhotonDistribution, phi: f64) -> PhotonDistribution {
    let len = dist.probs.len();
    let mut out = vec![0.0; len + 1];
    for (n, &p) in dist.probs.iter().enumerate() {
        let (c, s) = rabi_coefficients(n, phi);
        out[n] += c * c * p;
        out[n + 1] += s * s * p;
    }
    PhotonDistribution {
        probs: out,
        tail_bound: dist.tail_bound,
    }
}

pub fn mean_photon(dist: &PhotonDistribution) -> f64 {
    dist.probs
        .iter()
        .enumerate()
        .map(|(n, p)| n as f64 * p)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::PI;

    fn params(nex: f64, nu: f64, phi: f64) -> MaserParams {
        MaserParams::new(nex, nu, phi).unwrap()
    }

    #[test]
    fn rabi_coefficients_examples() {
        assert_eq!(rabi_coefficients(0, 0.0), (1.0, 0.0));
        let (c, s) = rabi_coefficients(0, PI / 2.0);
        assert_abs_diff_eq!(c, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s, 1.0, epsilon = 1e-15);
        let (c, s) = rabi_coefficients(1, PI / 2.0);
        assert_abs_diff_eq!(c, -0.605_699_867_078_813_4, epsilon = 1e-12);
        assert_abs_diff_eq!(s, 0.795_693_201_567_480_9, epsilon = 1e-12);
        for n in 0..50 {
            let (c, s) = rabi_coefficients(n, 1.234);
            assert_abs_diff_eq!(c * c + s * s, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn trapping_state_gives_exact_vacuum() {
        let dist = steady_state(&params(1.0, 0.0, PI), &TruncationPolicy::default()).unwrap();
        assert_eq!(dist.probs(), &[1.0]);
    }

    #[test]
    fn zero_phi_is_thermal() {
        let nu = 0.2;
        let dist = steady_state(&params(3.0, nu, 0.0), &TruncationPolicy::default()).unwrap();
        assert_abs_diff_eq!(dist.prob(0), 5.0 / 6.0, epsilon = 1e-12);
        for n in 0..=dist.n_max() {
            let expected = (nu / (nu + 1.0)).powi(n as i32) / (nu + 1.0);
            assert_abs_diff_eq!(dist.prob(n), expected, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(dist.mean_photon(), nu, epsilon = 1e-10);
    }

    #[test]
    fn pure_vacuum_when_nothing_pumps() {
        let dist = steady_state(&params(0.0, 0.0, 1.0), &TruncationPolicy::default()).unwrap();
        assert_eq!(dist.probs(), &[1.0]);
        assert_eq!(mean_photon(&dist), 0.0);
    }

    #[test]
    fn steady_state_ratios_follow_the_product() {
        let p = params(2.5, 0.3, 1.1);
        let dist = steady_state(&p, &TruncationPolicy::default()).unwrap();
        for n in 1..=dist.n_max() {
            let s = sin(p.phi * sqrt(n as f64));
            let factor = p.nu / (p.nu + 1.0) + p.nex / (p.nu + 1.0) * s * s / n as f64;
            assert_abs_diff_eq!(dist.prob(n), dist.prob(n - 1) * factor, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(dist.total(), 1.0, epsilon = 1e-12);
        assert!(dist.tail_bound() < 1e-12);
    }

    #[test]
    fn truncation_overflow_is_reported() {
        let trunc = TruncationPolicy {
            tail_eps: 1e-12,
            n_cap: 5,
        };
        let err = steady_state(&params(50.0, 0.0, 0.3), &trunc).unwrap_err();
        assert_eq!(err, Error::TruncationOverflow { n_cap: 5 });
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(MaserParams::new(-1.0, 0.0, 1.0).is_err());
        assert!(MaserParams::new(1.0, f64::NAN, 1.0).is_err());
        assert!(MaserParams::new(1.0, 0.0, -0.1).is_err());
        let bad = TruncationPolicy {
            tail_eps: 0.0,
            n_cap: 10,
        };
        assert!(steady_state(&params(1.0, 0.0, 1.0), &bad).is_err());
        assert!(PhotonDistribution::from_weights(vec![0.5, -0.1]).is_err());
        assert!(PhotonDistribution::from_weights(vec![]).is_err());
    }

    #[test]
    fn passage_on_vacuum_is_rabi_oscillation() {
        let phi = 0.77;
        let out = apply_atom_passage(&PhotonDistribution::vacuum(), phi);
        assert_abs_diff_eq!(out.prob(0), cos(phi) * cos(phi), epsilon = 1e-15);
        assert_abs_diff_eq!(out.prob(1), sin(phi) * sin(phi), epsilon = 1e-15);

        let out = apply_atom_passage(&PhotonDistribution::vacuum(), PI / 2.0);
        assert_abs_diff_eq!(out.prob(0), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out.prob(1), 1.0, epsilon = 1e-15);
        assert_eq!(mean_photon(&PhotonDistribution::number_state(1)), 1.0);
    }

    #[test]
    fn passage_conserves_probability() {
        let dist = steady_state(&params(4.0, 0.5, 0.9), &TruncationPolicy::default()).unwrap();
        let out = apply_atom_passage(&dist, 0.9);
        assert_eq!(out.n_max(), dist.n_max() + 1);
        assert_abs_diff_eq!(out.total(), dist.total(), epsilon = 1e-14);
    }
}
