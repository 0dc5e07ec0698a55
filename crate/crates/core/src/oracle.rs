//! Independent brute-force routes used to check the closed forms.
//!
//! Nothing here is on the production path. The field operators are built as
//! dense matrices and traced literally, spectra come from a Jacobi sweep on
//! the full Hermitian matrix, and the separable weight is maximized by direct
//! search over candidate pure parts.

use alloc::vec;
use alloc::vec::Vec;

use libm::{cos, fabs, log, sin, sqrt};
use num_complex::Complex64;
use rand::Rng;

use crate::density::{TwoQubitDensity, EE, EG, GE, GG};
use crate::fock::PhotonDistribution;
use crate::lewsan::LsResult;
use crate::pairstate::{
    is_separable, product_density_matrix, to_density_matrix, validate, PairCorrelations,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// `cos(φ√(aa†))`, diagonal.
    Cosine,
    /// `a† sin(φ√(aa†))/√(aa†)`, one step below the diagonal.
    Sine,
}

/// Square real matrix on the truncated photon-number space.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseFieldOperator {
    pub kind: Option<OperatorKind>,
    dim: usize,
    data: Vec<f64>,
}

impl DenseFieldOperator {
    fn zeros(dim: usize) -> Self {
        Self {
            kind: None,
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn cosine(dim: usize, phi: f64) -> Self {
        let mut m = Self::zeros(dim);
        m.kind = Some(OperatorKind::Cosine);
        for n in 0..dim {
            m.set(n, n, cos(phi * sqrt((n + 1) as f64)));
        }
        m
    }

    /// `S[n+1, n] = sin(φ√(n+1))`; the top level has nowhere to go and is cut.
    pub fn sine(dim: usize, phi: f64) -> Self {
        let mut m = Self::zeros(dim);
        m.kind = Some(OperatorKind::Sine);
        for n in 0..dim.saturating_sub(1) {
            m.set(n + 1, n, sin(phi * sqrt((n + 1) as f64)));
        }
        m
    }

    pub fn diagonal(values: &[f64], dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for (n, v) in values.iter().enumerate().take(dim) {
            m.set(n, n, *v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.dim + j] = x;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.kind = None;
        out.data
            .iter_mut()
            .zip(&rhs.data)
            .for_each(|(a, b)| *a += b);
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.kind = None;
        out.data
            .iter_mut()
            .zip(&rhs.data)
            .for_each(|(a, b)| *a -= b);
        out
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }
}

/// Matrix dimension for a distribution: one level for the photon the first
/// atom may add, one more so that `S†S` is exact on that level.
fn oracle_dim(dist: &PhotonDistribution) -> usize {
    dist.n_max() + 3
}

/// `(s, t, u, v)` from literal operator traces:
///
/// - `s = tr{(C² − S†S) ρ}`
/// - `t = tr{(C² − S†S)(CρC + SρS†)}`
/// - `u = tr{(S†CSC + CS†CS) ρ}`
/// - `v = tr{(C² − S†S)(CρC − SρS†)}`
pub fn matrix_correlations(dist: &PhotonDistribution, phi: f64) -> PairCorrelations {
    let dim = oracle_dim(dist);
    let c = DenseFieldOperator::cosine(dim, phi);
    let s = DenseFieldOperator::sine(dim, phi);
    let sd = s.transpose();
    let rho = DenseFieldOperator::diagonal(dist.probs(), dim);

    let inversion = c.matmul(&c).sub(&sd.matmul(&s));
    let kept = c.matmul(&rho).matmul(&c);
    let emitted = s.matmul(&rho).matmul(&sd);

    let cross = sd
        .matmul(&c)
        .matmul(&s)
        .matmul(&c)
        .add(&c.matmul(&sd).matmul(&c).matmul(&s));

    PairCorrelations::new(
        inversion.matmul(&rho).trace(),
        inversion.matmul(&kept.add(&emitted)).trace(),
        cross.matmul(&rho).trace(),
        inversion.matmul(&kept.sub(&emitted)).trace(),
    )
}

/// Joint two-atom state built from the four Kraus branches
/// `K_ee = CC`, `K_eg = −iSC`, `K_ge = −iCS`, `K_gg = −SS`
/// (second atom's operator on the left), with
/// `ρ_both[ab, a'b'] = tr{K_ab ρ K_{a'b'}†}`.
pub fn joint_density_dense(dist: &PhotonDistribution, phi: f64) -> TwoQubitDensity {
    let dim = oracle_dim(dist);
    let c = DenseFieldOperator::cosine(dim, phi);
    let s = DenseFieldOperator::sine(dim, phi);
    let rho = DenseFieldOperator::diagonal(dist.probs(), dim);

    let minus_i = Complex64::new(0.0, -1.0);
    let branches: [(usize, Complex64, DenseFieldOperator); 4] = [
        (EE, Complex64::new(1.0, 0.0), c.matmul(&c)),
        (EG, minus_i, s.matmul(&c)),
        (GE, minus_i, c.matmul(&s)),
        (GG, Complex64::new(-1.0, 0.0), s.matmul(&s)),
    ];

    let mut out = TwoQubitDensity::zeros();
    for (i, phase_i, k_i) in &branches {
        let left = k_i.matmul(&rho);
        for (j, phase_j, k_j) in &branches {
            let value = left.matmul(&k_j.transpose()).trace();
            out[(*i, *j)] = *phase_i * phase_j.conj() * value;
        }
    }
    out
}

fn hermitian_2x2(a: f64, d: f64, b: Complex64) -> [f64; 2] {
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let r = sqrt(half * half + b.norm_sqr());
    [mean - r, mean + r]
}

/// Eigenvalues of a Hermitian 4×4 matrix by cyclic complex Jacobi rotations,
/// ascending.
pub fn hermitian_eigenvalues(m: &TwoQubitDensity) -> [f64; 4] {
    let mut a = *m.entries();
    for _sweep in 0..64 {
        let mut off = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    off += a[i][j].norm_sqr();
                }
            }
        }
        let diag: f64 = (0..4).map(|i| a[i][i].re * a[i][i].re).sum();
        if off <= 1e-32 * diag.max(1e-300) || off == 0.0 {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                // Phase so that the pair block is real, then a real Jacobi rotation.
                let phase = apq / r;
                let theta = (a[q][q].re - a[p][p].re) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / sqrt(t * t + 1.0);
                let s = t * c;
                // G = D R with D = diag(1, e^{-iθ}) on (p, q).
                let g_pp = Complex64::new(c, 0.0);
                let g_pq = Complex64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;

                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * g_pp + y * g_qp;
                    row[q] = x * g_pq + y * g_qq;
                }
                for k in 0..4 {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = g_pp.conj() * x + g_qp.conj() * y;
                    a[q][k] = g_pq.conj() * x + g_qq.conj() * y;
                }
                a[p][q] = Complex64::new(0.0, 0.0);
                a[q][p] = Complex64::new(0.0, 0.0);
            }
        }
    }
    let mut ev = [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re];
    ev.sort_by(f64::total_cmp);
    ev
}

/// Whether the matrix splits into independent `{ee, gg}` and `{eg, ge}` blocks.
fn splits_into_x_blocks(m: &TwoQubitDensity) -> bool {
    [EE, GG].iter().all(|&i| {
        [EG, GE]
            .iter()
            .all(|&j| m[(i, j)].norm() == 0.0 && m[(j, i)].norm() == 0.0)
    })
}

/// Spectrum of a Hermitian 4×4 matrix, ascending.
///
/// Matrices that decouple into `{ee, gg}` and `{eg, ge}` blocks (the pair
/// states and their partial transposes) are diagonalized block by block in
/// closed form; anything else goes through [`hermitian_eigenvalues`].
pub fn spectrum_4x4(m: &TwoQubitDensity) -> [f64; 4] {
    if !splits_into_x_blocks(m) {
        return hermitian_eigenvalues(m);
    }
    let outer = hermitian_2x2(m[(EE, EE)].re, m[(GG, GG)].re, m[(EE, GG)]);
    let inner = hermitian_2x2(m[(EG, EG)].re, m[(GE, GE)].re, m[(EG, GE)]);
    let mut ev = [outer[0], outer[1], inner[0], inner[1]];
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn min_eigenvalue(m: &TwoQubitDensity) -> f64 {
    spectrum_4x4(m)[0]
}

/// Trace norm of `ρ − ρ₁ ⊗ ρ₂` from the spectrum of the explicit matrix.
pub fn numeric_trace_norm(corr: &PairCorrelations) -> f64 {
    let delta = to_density_matrix(corr) - product_density_matrix(corr);
    spectrum_4x4(&delta).iter().map(|x| fabs(*x)).sum()
}

/// Separability from the sign of the smallest partial-transpose eigenvalue.
pub fn ppt_separable(corr: &PairCorrelations, tol: f64) -> bool {
    min_eigenvalue(&to_density_matrix(corr).partial_transpose()) >= -tol
}

/// Pauli expectation values of an explicit two-atom state: the Bloch vectors
/// `⟨σ_i⟩`, `⟨τ_j⟩` and the correlation tensor `⟨σ_i τ_j⟩`, with
/// `σ_x = |g⟩⟨e| + |e⟩⟨g|`, `σ_y = i|g⟩⟨e| − i|e⟩⟨g|`, `σ_z = |e⟩⟨e| − |g⟩⟨g|`.
pub fn pauli_expectations(rho: &TwoQubitDensity) -> ([f64; 3], [f64; 3], [[f64; 3]; 3]) {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let identity = [[one, zero], [zero, one]];
    // Rows and columns ordered (e, g).
    let paulis = [
        [[zero, one], [one, zero]],
        [[zero, -i], [i, zero]],
        [[one, zero], [zero, -one]],
    ];
    let expect = |a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]| -> f64 {
        let mut acc = zero;
        for r1 in 0..2 {
            for r2 in 0..2 {
                for c1 in 0..2 {
                    for c2 in 0..2 {
                        acc += rho[(2 * c1 + c2, 2 * r1 + r2)] * a[r1][c1] * b[r2][c2];
                    }
                }
            }
        }
        acc.re
    };
    let first = core::array::from_fn(|k| expect(&paulis[k], &identity));
    let second = core::array::from_fn(|k| expect(&identity, &paulis[k]));
    let cross = core::array::from_fn(|a| core::array::from_fn(|b| expect(&paulis[a], &paulis[b])));
    (first, second, cross)
}

/// Entanglement dyadic `⟨σ_i τ_j⟩ − ⟨σ_i⟩⟨τ_j⟩` of an explicit state.
pub fn entanglement_dyadic_dense(rho: &TwoQubitDensity) -> [[f64; 3]; 3] {
    let (first, second, cross) = pauli_expectations(rho);
    core::array::from_fn(|a| core::array::from_fn(|b| cross[a][b] - first[a] * second[b]))
}

/// Checks of a decomposition against the explicit matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionCheck {
    /// Largest entry of `|S ρ_sep + (1 − S) ρ_pure − ρ|`.
    pub reconstruction_error: f64,
    pub sep_min_eigenvalue: f64,
    pub sep_pt_min_eigenvalue: f64,
    /// Sum of the three smallest eigenvalue moduli of the pure part.
    pub pure_rank_defect: f64,
}

pub fn check_decomposition(corr: &PairCorrelations, ls: &LsResult) -> DecompositionCheck {
    let rho = to_density_matrix(corr);
    let sep = ls.rho_sep;
    let (rebuilt, pure_rank_defect) = match &ls.rho_pure {
        Some(pure) => {
            let ev = hermitian_eigenvalues(pure);
            (
                sep.scale(ls.sep_degree) + pure.scale(1.0 - ls.sep_degree),
                ev[..3].iter().map(|x| fabs(*x)).sum(),
            )
        }
        None => (sep.scale(ls.sep_degree), 0.0),
    };
    DecompositionCheck {
        reconstruction_error: rebuilt.max_abs_diff(&rho),
        sep_min_eigenvalue: hermitian_eigenvalues(&sep)[0],
        sep_pt_min_eigenvalue: hermitian_eigenvalues(&sep.partial_transpose())[0],
        pure_rank_defect,
    }
}

/// Resolution of [`numeric_ls_search`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LsSearch {
    /// Grid points over the pure-part asymmetry in each round.
    pub grid: usize,
    /// Zoom rounds around the best grid point.
    pub rounds: usize,
    /// Random general pure states probed in addition to the family.
    pub probes: usize,
}

impl Default for LsSearch {
    fn default() -> Self {
        Self {
            grid: 41,
            rounds: 12,
            probes: 64,
        }
    }
}

const SEARCH_LIMIT: f64 = 0.999_999;
const BISECTION_STEPS: usize = 60;
const GOLDEN_STEPS: usize = 80;

/// Outcome of removing a fixed pure state with weight `1 − λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Removal {
    /// Largest feasible separable weight.
    Feasible(f64),
    /// Best (negative) partial-transpose margin reached; closer to zero is
    /// closer to feasibility.
    Infeasible(f64),
}

impl Removal {
    /// Total order: every feasible outcome beats every infeasible one.
    fn merit(self) -> f64 {
        match self {
            Removal::Feasible(l) => l,
            Removal::Infeasible(h) => h.min(0.0) - 1.0,
        }
    }
}

/// Largest `λ ∈ [0, 1]` with `(ρ − (1 − λ)P)/λ` positive and PPT.
///
/// Positivity of `ρ − (1 − λ)P` only improves with `λ`, so its threshold is
/// bisected. The smallest partial-transpose eigenvalue is concave in `λ`; its
/// maximum above the positivity threshold is located by golden section and
/// the largest feasible `λ` above it bisected.
fn removable_weight(
    rho: &TwoQubitDensity,
    rho_pt: &TwoQubitDensity,
    pure: &TwoQubitDensity,
) -> Removal {
    let pure_pt = pure.partial_transpose();
    let pos = |l: f64| min_eigenvalue(&(*rho - pure.scale(1.0 - l)));
    let ppt = |l: f64| min_eigenvalue(&(*rho_pt - pure_pt.scale(1.0 - l)));

    let lower = if pos(0.0) >= 0.0 {
        0.0
    } else {
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if pos(mid) >= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };

    if ppt(1.0) >= 0.0 {
        return Removal::Feasible(1.0);
    }

    let ratio = 0.5 * (sqrt(5.0) - 1.0);
    let (mut a, mut b) = (lower, 1.0);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (ppt(x1), ppt(x2));
    for _ in 0..GOLDEN_STEPS {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = ppt(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = ppt(x1);
        }
    }
    let (peak, peak_value) = [(lower, ppt(lower)), (x1, f1), (x2, f2)]
        .into_iter()
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap();
    if peak_value < 0.0 {
        return Removal::Infeasible(peak_value);
    }

    let (mut lo, mut hi) = (peak, 1.0);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if ppt(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Removal::Feasible(lo)
}

/// Pure part `√((1+p)/2)|eg⟩ + sign √((1−p)/2)|ge⟩`.
fn family_pure_state(p: f64, sign: f64) -> TwoQubitDensity {
    let mut psi = [Complex64::new(0.0, 0.0); 4];
    psi[EG] = Complex64::new(sqrt(0.5 * (1.0 + p)), 0.0);
    psi[GE] = Complex64::new(sign * sqrt(0.5 * (1.0 - p)), 0.0);
    TwoQubitDensity::projector(&psi)
}

fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box–Muller; 1 − U keeps the logarithm finite.
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen::<f64>();
    sqrt(-2.0 * log(u1)) * cos(2.0 * core::f64::consts::PI * u2)
}

/// Haar-random two-qubit pure state.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R) -> [Complex64; 4] {
    let mut psi: [Complex64; 4] =
        core::array::from_fn(|_| Complex64::new(standard_normal(rng), standard_normal(rng)));
    let norm = sqrt(psi.iter().map(|z| z.norm_sqr()).sum::<f64>());
    psi.iter_mut().for_each(|z| *z /= norm);
    psi
}

/// Direct numerical maximization of the separable weight.
///
/// The pure part is searched over the family `√((1+p)/2)|eg⟩ ± √((1−p)/2)|ge⟩`
/// (both signs, a grid over `p` refined by repeated zooming) and over
/// `search.probes` random general pure states. Returns the best weight found,
/// so it can only approach the true optimum from below.
pub fn numeric_ls_search<R: Rng + ?Sized>(
    corr: &PairCorrelations,
    search: &LsSearch,
    rng: &mut R,
) -> f64 {
    if is_separable(corr) {
        return 1.0;
    }
    let rho = to_density_matrix(corr);
    let rho_pt = rho.partial_transpose();
    let grid = search.grid.max(3);

    let mut best = 0.0_f64;
    for sign in [1.0, -1.0] {
        let merit = |p: f64| removable_weight(&rho, &rho_pt, &family_pure_state(p, sign)).merit();
        let (mut lo, mut hi) = (-SEARCH_LIMIT, SEARCH_LIMIT);
        for _ in 0..search.rounds.max(1) {
            let step = (hi - lo) / (grid - 1) as f64;
            let (arg, value) = (0..grid)
                .map(|i| {
                    let p = lo + step * i as f64;
                    (p, merit(p))
                })
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            best = best.max(value);
            lo = (arg - 2.0 * step).max(-SEARCH_LIMIT);
            hi = (arg + 2.0 * step).min(SEARCH_LIMIT);
        }
    }

    for _ in 0..search.probes {
        let pure = TwoQubitDensity::projector(&random_pure_state(rng));
        if let Removal::Feasible(l) = removable_weight(&rho, &rho_pt, &pure) {
            best = best.max(l);
        }
    }
    best
}

/// Uniform sample from `[−1, 1]⁴` restricted to physical pair states.
pub fn sample_valid_correlations<R: Rng + ?Sized>(rng: &mut R) -> PairCorrelations {
    loop {
        let corr = PairCorrelations::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        if validate(&corr).is_valid() {
            return corr;
        }
    }
}

/// Like [`sample_valid_correlations`], restricted to entangled states.
pub fn sample_nonseparable_correlations<R: Rng + ?Sized>(rng: &mut R) -> PairCorrelations {
    loop {
        let corr = sample_valid_correlations(rng);
        if !is_separable(&corr) {
            return corr;
        }
    }
}
