use num_complex::Complex;

use crate::eigen::eigenvalues_hermitian;
use crate::error::{Error, Result};
use crate::operator::Mat4;
use crate::scalar::Scalar;

/// A validated two-qubit density operator.
///
/// Construction symmetrises away anti-Hermitian round-off (up to `1e-10`),
/// and requires unit trace and a spectrum no lower than `-1e-10`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: Mat4<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    pub fn new(matrix: Mat4<T>) -> Result<Self> {
        let residual = matrix.hermitian_residual();
        if !(residual <= T::tol(1e-10)) {
            return Err(Error::NotHermitian {
                residual: residual.as_f64(),
            });
        }
        let matrix = matrix.hermitian_part();
        let trace = matrix.trace().re;
        if !((trace - T::one()).abs() <= T::tol(1e-12)) {
            return Err(Error::TraceNotOne {
                trace: trace.as_f64(),
            });
        }
        let min = eigenvalues_hermitian(&matrix)?[3];
        if min < -T::tol(1e-10) {
            return Err(Error::NotPositive {
                min_eigenvalue: min.as_f64(),
            });
        }
        Ok(Self { matrix })
    }

    /// `𝐈/4`.
    pub fn maximally_mixed() -> Self {
        Self {
            matrix: Mat4::identity().scale(T::lit(0.25)),
        }
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalised) nonzero vector.
    pub fn pure(psi: &[Complex<T>; 4]) -> Result<Self> {
        let norm_sq: T = psi.iter().map(|z| z.norm_sqr()).sum();
        if !(norm_sq > T::zero()) {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        Self::new(Mat4::outer(psi, psi).scale(T::one() / norm_sq))
    }

    pub fn matrix(&self) -> &Mat4<T> {
        &self.matrix
    }

    /// Spectrum, descending.
    pub fn eigenvalues(&self) -> Vec<T> {
        eigenvalues_hermitian(&self.matrix).expect("density matrix is Hermitian")
    }

    /// `U ρ U†`; valid for any unitary `U`.
    pub fn evolve(&self, unitary: &Mat4<T>) -> Result<Self> {
        Self::new(self.matrix.conjugate_by(unitary))
    }
}

impl<T> AsRef<Mat4<T>> for DensityMatrix<T> {
    fn as_ref(&self) -> &Mat4<T> {
        &self.matrix
    }
}
