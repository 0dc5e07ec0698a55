//! Explicit 4×4 two-atom density matrices.
//!
//! Basis order is `|ee⟩, |eg⟩, |ge⟩, |gg⟩`: the first letter belongs to the
//! first atom, index `2a + b` with `e = 0`, `g = 1`.

use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

pub const EE: usize = 0;
pub const EG: usize = 1;
pub const GE: usize = 2;
pub const GG: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitDensity {
    m: [[Complex64; 4]; 4],
}

impl TwoQubitDensity {
    pub fn zeros() -> Self {
        Self {
            m: [[Complex64::new(0.0, 0.0); 4]; 4],
        }
    }

    pub fn identity() -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            out.m[i][i] = Complex64::new(1.0, 0.0);
        }
        out
    }

    pub fn from_entries(m: [[Complex64; 4]; 4]) -> Self {
        Self { m }
    }

    pub fn from_real(m: [[f64; 4]; 4]) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = Complex64::new(m[i][j], 0.0);
            }
        }
        out
    }

    /// `|ψ⟩⟨ψ|` for an amplitude vector in the `ee, eg, ge, gg` basis.
    pub fn projector(psi: &[Complex64; 4]) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = psi[i] * psi[j].conj();
            }
        }
        out
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.m
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.m[i][i]).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.m[i][j] = self.m[j][i].conj();
            }
        }
        out
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = *self;
        out.m.iter_mut().flatten().for_each(|z| *z *= k);
        out
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        worst
    }

    /// Transpose with respect to the second atom's indices.
    pub fn partial_transpose(&self) -> Self {
        let mut out = Self::zeros();
        for a in 0..2 {
            for b in 0..2 {
                for a2 in 0..2 {
                    for b2 in 0..2 {
                        out.m[2 * a + b][2 * a2 + b2] = self.m[2 * a + b2][2 * a2 + b];
                    }
                }
            }
        }
        out
    }

    /// Whether every nonzero entry sits on the diagonal or in the `eg`/`ge`
    /// coherence, i.e. the sparsity pattern of the maser pair states.
    pub fn has_family_sparsity(&self, tol: f64) -> bool {
        for i in 0..4 {
            for j in 0..4 {
                let allowed = i == j || (i == EG && j == GE) || (i == GE && j == EG);
                if !allowed && self.m[i][j].norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

impl Index<(usize, usize)> for TwoQubitDensity {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.m[i][j]
    }
}

impl IndexMut<(usize, usize)> for TwoQubitDensity {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.m[i][j]
    }
}

impl Add for TwoQubitDensity {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.m[i][j] += rhs.m[i][j];
            }
        }
        self
    }
}

impl Sub for TwoQubitDensity {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.m[i][j] -= rhs.m[i][j];
            }
        }
        self
    }
}

impl Mul<f64> for TwoQubitDensity {
    type Output = Self;

    fn mul(self, k: f64) -> Self {
        self.scale(k)
    }
}
