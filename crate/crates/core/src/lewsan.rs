//! Best separable approximation of the pair state.
//!
//! A non-separable pair state is split as `ρ = S ρ_sep + (1 − S) ρ_pure` with
//! `ρ_sep` separable, `ρ_pure` pure and the separable weight `S` as large as
//! possible. Within the four-parameter family the pure part is
//!
//! ```text
//! ρ_pure = ¼[1 + p σ_z − p τ_z + q(σ_x τ_x + σ_y τ_y) − σ_z τ_z],   q = sgn(u) √(1 − p²)
//! ```
//!
//! i.e. the superposition `√((1+p)/2)|eg⟩ + sgn(u)√((1−p)/2)|ge⟩`. With
//! `Λ = 1 − |u| + ½√((1+v)² − (s+t)²)`, `p = 0` whenever
//! `Λ² − (1+v)Λ + st ≥ 0`; otherwise `p` solves
//!
//! ```text
//! (1 − Λ)/√(1 − p²) · [(1 − v) − (s − t) p] = (1 − Λ)² − v + st
//! ```
//!
//! and the degree of separability is `S = 1 − (1 − Λ)/√(1 − p²)`.

use alloc::vec::Vec;

use libm::{fabs, sqrt};

use crate::density::TwoQubitDensity;
use crate::error::{Error, Result};
use crate::pairstate::{
    density_eigenvalues, is_separable, partial_transpose_eigenvalues, to_density_matrix,
    PairCorrelations,
};

/// Tolerance on the unsquared root equation.
pub const ROOT_TOL: f64 = 1e-10;
/// Tolerance on the eigenvalues of the reconstructed separable part.
pub const SEPARABLE_PART_TOL: f64 = 1e-9;

const DEGENERATE_TOL: f64 = 1e-12;
const TOUCHING_TOL: f64 = 1e-8;
const SCAN_LIMIT: f64 = 0.999_999;
const SCAN_POINTS: usize = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub struct LsResult {
    /// Degree of separability `S ∈ [0, 1]`.
    pub sep_degree: f64,
    pub lambda_cap: f64,
    /// Asymmetry of the pure part; zero for separable input.
    pub p: f64,
    /// Transverse amplitude `sgn(u)√(1 − p²)`; zero for separable input.
    pub q: f64,
    /// `None` when the input is separable.
    pub rho_pure: Option<TwoQubitDensity>,
    pub rho_sep: TwoQubitDensity,
    /// Parameters of `rho_sep`, which stays inside the family.
    pub sep_correlations: PairCorrelations,
}

impl LsResult {
    pub fn one_minus_s(&self) -> f64 {
        1.0 - self.sep_degree
    }
}

/// `Λ = 1 − |u| + ½√((1+v)² − (s+t)²)`.
///
/// The radicand is non-negative for valid input; rounding noise on the
/// boundary `1 + v = |s + t|` is clamped to zero.
pub fn lambda_cap(corr: &PairCorrelations) -> f64 {
    let PairCorrelations { s, t, u, v } = *corr;
    let radicand = (1.0 + v) * (1.0 + v) - (s + t) * (s + t);
    1.0 - fabs(u) + 0.5 * sqrt(radicand.max(0.0))
}

/// `Λ² − (1+v)Λ + st`; a non-negative value selects `p = 0`.
pub fn zero_asymmetry_residual(corr: &PairCorrelations, lambda: f64) -> f64 {
    lambda * lambda - (1.0 + corr.v) * lambda + corr.s * corr.t
}

/// Parameters `(p, −p, q, −1)` of the pure part.
pub fn pure_correlations(p: f64, q: f64) -> PairCorrelations {
    PairCorrelations::new(p, -p, q, -1.0)
}

fn sign(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Candidate split for a given asymmetry `p`.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    p: f64,
    q: f64,
    sep_degree: f64,
    sep: PairCorrelations,
}

impl Candidate {
    fn new(corr: &PairCorrelations, lambda: f64, p: f64) -> Self {
        let q = sign(corr.u) * sqrt(1.0 - p * p);
        let sep_degree = 1.0 - (1.0 - lambda) / sqrt(1.0 - p * p);
        Self {
            p,
            q,
            sep_degree,
            sep: separable_part(corr, sep_degree, p, q),
        }
    }

    fn min_eigenvalue(&self) -> f64 {
        density_eigenvalues(&self.sep)[0].min(partial_transpose_eigenvalues(&self.sep)[0])
    }

    fn is_admissible(&self) -> bool {
        (0.0..=1.0).contains(&self.sep_degree) && self.min_eigenvalue() >= -SEPARABLE_PART_TOL
    }
}

/// `(ρ − (1 − S) ρ_pure)/S` in family coordinates. For `S = 0` the state is
/// the pure part itself and any separable state completes the split; the
/// maximally mixed one is used.
fn separable_part(corr: &PairCorrelations, sep_degree: f64, p: f64, q: f64) -> PairCorrelations {
    if sep_degree <= f64::EPSILON {
        return PairCorrelations::new(0.0, 0.0, 0.0, 0.0);
    }
    let w = 1.0 - sep_degree;
    PairCorrelations::new(
        (corr.s - w * p) / sep_degree,
        (corr.t + w * p) / sep_degree,
        (corr.u - w * q) / sep_degree,
        (corr.v + w) / sep_degree,
    )
}

/// Unsquared root equation: left side minus right side.
fn root_residual(corr: &PairCorrelations, lambda: f64, p: f64) -> f64 {
    let a = 1.0 - lambda;
    a * ((1.0 - corr.v) - (corr.s - corr.t) * p) / sqrt(1.0 - p * p)
        - (a * a - corr.v + corr.s * corr.t)
}

fn root_residual_slope(corr: &PairCorrelations, lambda: f64, p: f64) -> f64 {
    let a = 1.0 - lambda;
    let one_minus = 1.0 - p * p;
    a * ((1.0 - corr.v) * p - (corr.s - corr.t)) / (one_minus * sqrt(one_minus))
}

/// Newton refinement that never returns a worse iterate than it was given.
fn polish(corr: &PairCorrelations, lambda: f64, start: f64) -> f64 {
    let mut p = start;
    let mut best = (fabs(root_residual(corr, lambda, p)), p);
    for _ in 0..8 {
        let slope = root_residual_slope(corr, lambda, p);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let next = p - root_residual(corr, lambda, p) / slope;
        if !(next.is_finite() && fabs(next) < 1.0) {
            break;
        }
        let step = fabs(next - p);
        p = next;
        let r = fabs(root_residual(corr, lambda, p));
        if r < best.0 {
            best = (r, p);
        }
        if step <= 1e-16 {
            break;
        }
    }
    best.1
}

/// Real roots of `a x² + b x + c` by the cancellation-free formula.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    if a == 0.0 {
        if b != 0.0 {
            roots.push(-c / b);
        }
        return roots;
    }
    let disc = b * b - 4.0 * a * c;
    // A double root is only resolved to about √ε by rounding, which either
    // splits it or pushes the discriminant negative; the vertex is exact.
    if fabs(disc) <= TOUCHING_TOL * (b * b + fabs(4.0 * a * c)) {
        roots.push(-b / (2.0 * a));
    }
    if disc < 0.0 {
        return roots;
    }
    let q = -0.5 * (b + sign(b) * sqrt(disc));
    roots.push(q / a);
    if q != 0.0 {
        roots.push(c / q);
    }
    roots
}

fn candidate_roots(corr: &PairCorrelations, lambda: f64) -> Vec<f64> {
    let a = 1.0 - lambda;
    let big_a = 1.0 - corr.v;
    let big_b = corr.s - corr.t;
    let rhs = a * a - corr.v + corr.s * corr.t;

    if fabs(rhs) <= DEGENERATE_TOL {
        let mut roots = Vec::new();
        if fabs(big_b) > DEGENERATE_TOL {
            roots.push(big_a / big_b);
        }
        return roots;
    }

    // a²(A − B p)² = R²(1 − p²)
    let a2 = a * a;
    quadratic_roots(
        a2 * big_b * big_b + rhs * rhs,
        -2.0 * a2 * big_a * big_b,
        a2 * big_a * big_a - rhs * rhs,
    )
}

fn best_admissible(
    corr: &PairCorrelations,
    lambda: f64,
    roots: impl IntoIterator<Item = f64>,
) -> Option<Candidate> {
    roots
        .into_iter()
        .filter(|p| p.is_finite() && fabs(*p) < 1.0)
        .map(|p| polish(corr, lambda, p))
        .filter(|&p| fabs(p) < 1.0 && fabs(root_residual(corr, lambda, p)) <= ROOT_TOL)
        .map(|p| Candidate::new(corr, lambda, p))
        .filter(Candidate::is_admissible)
        .max_by(|x, y| x.sep_degree.total_cmp(&y.sep_degree))
}

/// Sign-change scan of the unsquared equation with bisection refinement.
fn scan_roots(corr: &PairCorrelations, lambda: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    let step = 2.0 * SCAN_LIMIT / SCAN_POINTS as f64;
    let mut lo = -SCAN_LIMIT;
    let mut f_lo = root_residual(corr, lambda, lo);
    for i in 1..=SCAN_POINTS {
        let hi = -SCAN_LIMIT + step * i as f64;
        let f_hi = root_residual(corr, lambda, hi);
        if f_lo == 0.0 {
            roots.push(lo);
        } else if f_lo * f_hi < 0.0 {
            let (mut a, mut b, mut fa) = (lo, hi, f_lo);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                let fm = root_residual(corr, lambda, mid);
                if fm == 0.0 || b - a <= f64::EPSILON {
                    a = mid;
                    b = mid;
                    break;
                }
                if fa * fm < 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push(0.5 * (a + b));
        }
        lo = hi;
        f_lo = f_hi;
    }
    roots
}

fn solve_candidate(corr: &PairCorrelations, lambda: f64) -> Result<Candidate> {
    if zero_asymmetry_residual(corr, lambda) >= 0.0 {
        return Ok(Candidate::new(corr, lambda, 0.0));
    }
    best_admissible(corr, lambda, candidate_roots(corr, lambda))
        .or_else(|| best_admissible(corr, lambda, scan_roots(corr, lambda)))
        .ok_or(Error::NoValidRoot)
}

/// Asymmetry `p` of the pure part for a non-separable state.
///
/// Squaring the root equation gives a quadratic in `p`; its roots inside
/// `(−1, 1)` that satisfy the unsquared equation and leave a positive,
/// PPT separable remainder are kept, and the one with the largest `S` wins.
/// A sign-change scan backs up the quadratic when nothing survives.
pub fn solve_p(corr: &PairCorrelations, lambda: f64) -> Result<f64> {
    solve_candidate(corr, lambda).map(|c| c.p)
}

pub fn ls_decompose(corr: &PairCorrelations) -> Result<LsResult> {
    let lambda = lambda_cap(corr);
    let rho = to_density_matrix(corr);

    if corr.u == 0.0 || is_separable(corr) {
        return Ok(LsResult {
            sep_degree: 1.0,
            lambda_cap: lambda,
            p: 0.0,
            q: 0.0,
            rho_pure: None,
            rho_sep: rho,
            sep_correlations: *corr,
        });
    }

    let cand = solve_candidate(corr, lambda)?;
    let min_eigenvalue = cand.min_eigenvalue();
    if !(0.0..=1.0).contains(&cand.sep_degree) {
        return Err(Error::DecompositionInvalid {
            what: "separable weight outside [0, 1]",
            min_eigenvalue,
        });
    }
    if min_eigenvalue < -SEPARABLE_PART_TOL {
        return Err(Error::DecompositionInvalid {
            what: "separable part is not positive and PPT",
            min_eigenvalue,
        });
    }

    Ok(LsResult {
        sep_degree: cand.sep_degree,
        lambda_cap: lambda,
        p: cand.p,
        q: cand.q,
        rho_pure: Some(to_density_matrix(&pure_correlations(cand.p, cand.q))),
        rho_sep: to_density_matrix(&cand.sep),
        sep_correlations: cand.sep,
    })
}
