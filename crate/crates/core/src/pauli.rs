//! Expansion of two-qubit operators in the Pauli product basis.

use crate::density::DensityMatrix;
use crate::operator::{pauli_product, Mat4};
use crate::scalar::Scalar;

/// Local Bloch vectors and the correlation matrix of a two-qubit operator:
///
/// `ρ = ¼(𝐈⊗𝐈 + Σ xᵢ σᵢ⊗𝐈 + Σ yⱼ 𝐈⊗σⱼ + Σ Tᵢⱼ σᵢ⊗σⱼ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliDecomposition<T> {
    /// Bloch vector of qubit a.
    pub bloch_a: [T; 3],
    /// Bloch vector of qubit b.
    pub bloch_b: [T; 3],
    /// `Tᵢⱼ = Tr(ρ σᵢ⊗σⱼ)`.
    pub correlations: [[T; 3]; 3],
}

impl<T: Scalar> PauliDecomposition<T> {
    /// Decomposition with diagonal correlations `c` and the given local vectors.
    pub fn diagonal(bloch_a: [T; 3], bloch_b: [T; 3], c: [T; 3]) -> Self {
        let mut correlations = [[T::zero(); 3]; 3];
        for i in 0..3 {
            correlations[i][i] = c[i];
        }
        Self {
            bloch_a,
            bloch_b,
            correlations,
        }
    }

    pub fn of(rho: &DensityMatrix<T>) -> Self {
        Self::of_operator(rho.matrix())
    }

    /// Coefficients of an arbitrary operator (real parts of the traces).
    pub fn of_operator(m: &Mat4<T>) -> Self {
        let coeff = |i: usize, j: usize| pauli_product::<T>(i, j).trace_product(m).re;
        let mut out = Self::diagonal([T::zero(); 3], [T::zero(); 3], [T::zero(); 3]);
        for i in 0..3 {
            out.bloch_a[i] = coeff(i + 1, 0);
            out.bloch_b[i] = coeff(0, i + 1);
            for j in 0..3 {
                out.correlations[i][j] = coeff(i + 1, j + 1);
            }
        }
        out
    }

    /// Reassembles the operator; exact inverse of [`PauliDecomposition::of`].
    pub fn compose(&self) -> Mat4<T> {
        let mut m = Mat4::identity();
        for i in 0..3 {
            m = m + pauli_product(i + 1, 0).scale(self.bloch_a[i]);
            m = m + pauli_product(0, i + 1).scale(self.bloch_b[i]);
            for j in 0..3 {
                m = m + pauli_product(i + 1, j + 1).scale(self.correlations[i][j]);
            }
        }
        m.scale(T::lit(0.25))
    }

    /// `(T₁₁, T₂₂, T₃₃)`.
    pub fn correlation_diagonal(&self) -> [T; 3] {
        [
            self.correlations[0][0],
            self.correlations[1][1],
            self.correlations[2][2],
        ]
    }

    /// Largest off-diagonal `|Tᵢⱼ|`.
    pub fn max_off_diagonal(&self) -> T {
        let mut worst = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    worst = worst.max(self.correlations[i][j].abs());
                }
            }
        }
        worst
    }

    /// Both local Bloch vectors vanish to `tol`.
    pub fn has_vanishing_marginals(&self, tol: T) -> bool {
        self.bloch_a
            .iter()
            .chain(self.bloch_b.iter())
            .all(|v| v.abs() <= tol)
    }
}

pub(crate) fn dot<T: Scalar>(u: &[T; 3], v: &[T; 3]) -> T {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub(crate) fn norm<T: Scalar>(u: &[T; 3]) -> T {
    dot(u, u).sqrt()
}
