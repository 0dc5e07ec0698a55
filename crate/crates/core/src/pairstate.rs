//! Joint state of two atoms that traverse the cavity back to back.
//!
//! With Pauli operators `σ` (first atom) and `τ` (second atom) the pair state
//! is `¼(1 + s σ_z + t τ_z + u(σ_x τ_x + σ_y τ_y) + v σ_z τ_z)`, so four real
//! numbers describe it completely.

use libm::{cos, fabs, sqrt};
use num_complex::Complex64;

use crate::density::{TwoQubitDensity, EE, EG, GE, GG};
use crate::error::{Error, Result};
use crate::fock::{apply_atom_passage, rabi_coefficients, PhotonDistribution};

/// Absolute tolerance for positivity and separability boundary decisions.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Violation of positivity beyond this is a numerics bug, not a boundary case.
const STATE_TOL: f64 = 1e-9;

/// The parameters `(s, t, u, v)` of the pair state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCorrelations {
    /// Bloch z-component of the first atom.
    pub s: f64,
    /// Bloch z-component of the second atom.
    pub t: f64,
    /// Transverse element of the cross dyadic.
    pub u: f64,
    /// Longitudinal element of the cross dyadic.
    pub v: f64,
}

impl PairCorrelations {
    pub const fn new(s: f64, t: f64, u: f64, v: f64) -> Self {
        Self { s, t, u, v }
    }

    pub fn validate(&self) -> Validity {
        validate(self)
    }

    /// The same state with the transverse correlation sign flipped.
    pub fn mirrored(&self) -> Self {
        Self {
            u: -self.u,
            ..*self
        }
    }

    pub fn is_finite(&self) -> bool {
        self.s.is_finite() && self.t.is_finite() && self.u.is_finite() && self.v.is_finite()
    }
}

/// Residuals of the two positivity inequalities
/// `1 − v ≥ √(4u² + (s−t)²)` and `1 + v ≥ |s + t|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Validity {
    pub upper: f64,
    pub lower: f64,
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        self.upper >= -BOUNDARY_TOL && self.lower >= -BOUNDARY_TOL
    }

    fn within(&self, tol: f64) -> bool {
        self.upper >= -tol && self.lower >= -tol
    }
}

pub fn validate(corr: &PairCorrelations) -> Validity {
    let PairCorrelations { s, t, u, v } = *corr;
    Validity {
        upper: (1.0 - v) - sqrt(4.0 * u * u + (s - t) * (s - t)),
        lower: (1.0 + v) - fabs(s + t),
    }
}

/// Pair parameters for a field with photon distribution `dist` met by two
/// excited atoms in immediate succession.
///
/// All traces reduce to photon-number sums because the field is diagonal:
///
/// - `s = Σ p_n cos(2φ√(n+1))`
/// - `t = Σ p'_n cos(2φ√(n+1))`, `p'` the field after the first atom
/// - `u = 2 Σ p_n sin²(φ√(n+1)) cos(φ√(n+1)) cos(φ√(n+2))`
/// - `v = Σ cos(2φ√(n+1)) [cos²(φ√(n+1)) p_n − sin²(φ√n) p_{n−1}]`
pub fn correlations(dist: &PhotonDistribution, phi: f64) -> Result<PairCorrelations> {
    let after = apply_atom_passage(dist, phi);

    let mut s_sum = 0.0;
    let mut t_sum = 0.0;
    let mut u_sum = 0.0;
    let mut v_sum = 0.0;
    // sin²(φ√n) p_{n−1}: the part of p'_n fed from below.
    let mut emitted_into = 0.0;
    for n in 0..=after.n_max() {
        let p = dist.prob(n);
        let (c, s) = rabi_coefficients(n, phi);
        let (c_next, _) = rabi_coefficients(n + 1, phi);
        let inversion = cos(2.0 * phi * sqrt((n + 1) as f64));

        s_sum += p * inversion;
        t_sum += after.prob(n) * inversion;
        u_sum += 2.0 * p * s * s * c * c_next;
        v_sum += inversion * (c * c * p - emitted_into);
        emitted_into = s * s * p;
    }

    let corr = PairCorrelations::new(s_sum, t_sum, u_sum, v_sum);
    let validity = validate(&corr);
    if !validity.within(STATE_TOL) {
        return Err(Error::InvalidState {
            upper: validity.upper,
            lower: validity.lower,
        });
    }
    Ok(corr)
}

/// Diagonal of the entanglement dyadic `C − s t`: `(u, u, v − st)`.
pub fn entanglement_dyadic(corr: &PairCorrelations) -> [f64; 3] {
    [corr.u, corr.u, corr.v - corr.s * corr.t]
}

/// Eigenvalues of `Δρ = ρ − ρ₁ ⊗ ρ₂`: `¼(v − st)` twice and `¼(±2u − (v − st))`.
///
/// These sum to zero, as they must for the difference of two unit-trace
/// states.
pub fn delta_eigenvalues(corr: &PairCorrelations) -> [f64; 4] {
    let w = corr.v - corr.s * corr.t;
    [
        0.25 * w,
        0.25 * w,
        0.25 * (2.0 * corr.u - w),
        0.25 * (-2.0 * corr.u - w),
    ]
}

/// Trace norm of `Δρ`: `|v − st|` when `2|u| ≤ |v − st|`, else `½|v − st| + |u|`.
pub fn delta_trace_norm(corr: &PairCorrelations) -> f64 {
    let w = fabs(corr.v - corr.s * corr.t);
    let u = fabs(corr.u);
    if 2.0 * u <= w {
        w
    } else {
        0.5 * w + u
    }
}

/// Largest characteristic value of the entanglement dyadic.
pub fn degree_of_correlation(corr: &PairCorrelations) -> f64 {
    fabs(corr.u).max(fabs(corr.v - corr.s * corr.t))
}

/// Closed-form eigenvalues of the pair state, ascending.
pub fn density_eigenvalues(corr: &PairCorrelations) -> [f64; 4] {
    let PairCorrelations { s, t, u, v } = *corr;
    let r = sqrt((s - t) * (s - t) + 4.0 * u * u);
    let mut ev = [
        0.25 * (1.0 + s + t + v),
        0.25 * (1.0 - s - t + v),
        0.25 * ((1.0 - v) + r),
        0.25 * ((1.0 - v) - r),
    ];
    ev.sort_by(f64::total_cmp);
    ev
}

/// Closed-form eigenvalues of the partially transposed pair state, ascending.
pub fn partial_transpose_eigenvalues(corr: &PairCorrelations) -> [f64; 4] {
    let PairCorrelations { s, t, u, v } = *corr;
    let r = sqrt((s + t) * (s + t) + 4.0 * u * u);
    let mut ev = [
        0.25 * (1.0 + s - t - v),
        0.25 * (1.0 - s + t - v),
        0.25 * ((1.0 + v) + r),
        0.25 * ((1.0 + v) - r),
    ];
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn to_density_matrix(corr: &PairCorrelations) -> TwoQubitDensity {
    let PairCorrelations { s, t, u, v } = *corr;
    let mut rho = TwoQubitDensity::zeros();
    rho[(EE, EE)] = Complex64::new(0.25 * (1.0 + s + t + v), 0.0);
    rho[(EG, EG)] = Complex64::new(0.25 * (1.0 + s - t - v), 0.0);
    rho[(GE, GE)] = Complex64::new(0.25 * (1.0 - s + t - v), 0.0);
    rho[(GG, GG)] = Complex64::new(0.25 * (1.0 - s - t + v), 0.0);
    rho[(EG, GE)] = Complex64::new(0.5 * u, 0.0);
    rho[(GE, EG)] = Complex64::new(0.5 * u, 0.0);
    rho
}

/// Product of the two single-atom states `½(1 + s σ_z) ⊗ ½(1 + t τ_z)`.
pub fn product_density_matrix(corr: &PairCorrelations) -> TwoQubitDensity {
    let first = [0.5 * (1.0 + corr.s), 0.5 * (1.0 - corr.s)];
    let second = [0.5 * (1.0 + corr.t), 0.5 * (1.0 - corr.t)];
    let mut rho = TwoQubitDensity::zeros();
    for a in 0..2 {
        for b in 0..2 {
            rho[(2 * a + b, 2 * a + b)] = Complex64::new(first[a] * second[b], 0.0);
        }
    }
    rho
}

/// Partial-transpose criterion for this family: separable iff
/// `1 + v ≥ √(4u² + (s+t)²)`.
pub fn is_separable(corr: &PairCorrelations) -> bool {
    let PairCorrelations { s, t, u, v } = *corr;
    1.0 + v >= sqrt(4.0 * u * u + (s + t) * (s + t)) - BOUNDARY_TOL
}

pub fn partial_transpose(rho: &TwoQubitDensity) -> TwoQubitDensity {
    rho.partial_transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::{PI, SQRT_2};

    fn c(s: f64, t: f64, u: f64, v: f64) -> PairCorrelations {
        PairCorrelations::new(s, t, u, v)
    }

    fn assert_corr(actual: PairCorrelations, expected: PairCorrelations, tol: f64) {
        assert_abs_diff_eq!(actual.s, expected.s, epsilon = tol);
        assert_abs_diff_eq!(actual.t, expected.t, epsilon = tol);
        assert_abs_diff_eq!(actual.u, expected.u, epsilon = tol);
        assert_abs_diff_eq!(actual.v, expected.v, epsilon = tol);
    }

    #[test]
    fn vacuum_trapping_passes_atoms_unchanged() {
        let corr = correlations(&PhotonDistribution::vacuum(), PI).unwrap();
        assert_corr(corr, c(1.0, 1.0, 0.0, 1.0), 1e-14);
    }

    #[test]
    fn vacuum_deterministic_emission() {
        let corr = correlations(&PhotonDistribution::vacuum(), PI / 2.0).unwrap();
        let k = cos(SQRT_2 * PI);
        assert_corr(corr, c(-1.0, k, 0.0, -k), 1e-14);
        assert_abs_diff_eq!(k, -0.266_255_342_041_415_6, epsilon = 1e-12);
        assert_abs_diff_eq!(corr.v - corr.s * corr.t, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(delta_trace_norm(&corr), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn validity_examples() {
        let ok = validate(&c(0.0, 0.0, 0.45, -0.2));
        assert!(ok.is_valid());
        assert_abs_diff_eq!(ok.upper, 1.2 - 0.9, epsilon = 1e-15);
        assert_abs_diff_eq!(ok.lower, 0.8, epsilon = 1e-15);
        assert!(!validate(&c(0.0, 0.0, 0.6, 0.0)).is_valid());
        let edge = validate(&c(1.0, 1.0, 0.0, 1.0));
        assert!(edge.is_valid());
        assert_eq!(edge.upper, 0.0);
        assert_eq!(edge.lower, 0.0);
    }

    #[test]
    fn trace_norm_branches() {
        assert_abs_diff_eq!(
            delta_trace_norm(&c(0.0, 0.0, 0.1, 0.5)),
            0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            delta_trace_norm(&c(0.0, 0.0, 0.3, 0.5)),
            0.55,
            epsilon = 1e-15
        );
        let ev = delta_eigenvalues(&c(0.3, -0.2, 0.25, 0.1));
        assert_abs_diff_eq!(ev.iter().sum::<f64>(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn degree_of_correlation_examples() {
        assert_eq!(degree_of_correlation(&c(0.0, 0.0, 0.3, 0.5)), 0.5);
        assert_eq!(degree_of_correlation(&c(1.0, 1.0, 0.0, 1.0)), 0.0);
        assert_eq!(
            entanglement_dyadic(&c(0.5, 0.5, 0.3, 0.5)),
            [0.3, 0.3, 0.25]
        );
    }

    #[test]
    fn density_matrix_layout() {
        let rho = to_density_matrix(&c(1.0, 1.0, 0.0, 1.0));
        let mut ee = TwoQubitDensity::zeros();
        ee[(EE, EE)] = Complex64::new(1.0, 0.0);
        assert_eq!(rho, ee);

        let rho = to_density_matrix(&c(0.0, 0.0, 0.45, -0.2));
        let diag: [f64; 4] = core::array::from_fn(|i| rho[(i, i)].re);
        for (d, e) in diag.iter().zip([0.2, 0.3, 0.3, 0.2]) {
            assert_abs_diff_eq!(*d, e, epsilon = 1e-15);
        }
        assert_eq!(rho[(EG, GE)].re, 0.225);
        assert_eq!(rho[(GE, EG)].re, 0.225);
        assert!(rho.has_family_sparsity(0.0));
        let ev = density_eigenvalues(&c(0.0, 0.0, 0.45, -0.2));
        for (a, b) in ev.iter().zip([0.075, 0.2, 0.2, 0.525]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-15);
        }

        let mixed = to_density_matrix(&c(0.0, 0.0, 0.0, 0.0));
        assert_eq!(mixed, TwoQubitDensity::identity().scale(0.25));
    }

    #[test]
    fn separability_examples() {
        assert!(is_separable(&c(0.3, -0.7, 0.0, 0.1)));
        assert!(!is_separable(&c(0.0, 0.0, 0.45, -0.2)));
        assert!(is_separable(&c(0.0, 0.0, 0.4, -0.2)));
        let pt = partial_transpose_eigenvalues(&c(0.0, 0.0, 0.45, -0.2));
        assert!(pt[0] < 0.0);
        assert_abs_diff_eq!(pt[0], 0.25 * (0.8 - 0.9), epsilon = 1e-15);
    }
}
