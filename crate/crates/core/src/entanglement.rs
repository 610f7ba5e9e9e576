//! Peres–Horodecki partial-transpose test and the CHSH maximum.

use serde::Serialize;

use crate::density::DensityMatrix;
use crate::eigen::{eigenvalues_hermitian, symmetric_eigenvalues};
use crate::operator::{Mat4, Subsystem};
use crate::pauli::PauliDecomposition;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntanglementReport<T> {
    pub min_pt_eigenvalue: T,
    /// Sum of the moduli of the negative partial-transpose eigenvalues.
    pub negativity: T,
    pub ppt: bool,
    /// Largest CHSH value over local spin measurements, in `[0, 2√2]`.
    pub chsh_max: T,
    pub chsh_violated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntanglementRecord {
    pub min_pt_eig: f64,
    pub negativity: f64,
    pub ppt: bool,
    pub chsh_max: f64,
    pub chsh_violated: bool,
}

impl<T: Scalar> EntanglementReport<T> {
    pub fn record(&self) -> EntanglementRecord {
        EntanglementRecord {
            min_pt_eig: self.min_pt_eigenvalue.as_f64(),
            negativity: self.negativity.as_f64(),
            ppt: self.ppt,
            chsh_max: self.chsh_max.as_f64(),
            chsh_violated: self.chsh_violated,
        }
    }
}

/// Transpose on the indices of qubit b.
pub fn partial_transpose<T: Scalar>(rho: &DensityMatrix<T>) -> Mat4<T> {
    partial_transpose_on(rho, Subsystem::B)
}

/// Transpose on the indices of the chosen qubit.
pub fn partial_transpose_on<T: Scalar>(rho: &DensityMatrix<T>, side: Subsystem) -> Mat4<T> {
    let m = rho.matrix();
    let mut out = Mat4::zeros();
    for i in 0..2 {
        for k in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = match side {
                        Subsystem::B => m[(2 * i + l, 2 * j + k)],
                        Subsystem::A => m[(2 * j + k, 2 * i + l)],
                    };
                }
            }
        }
    }
    out
}

/// `2·sqrt(m₁ + m₂)` for the two largest eigenvalues of `TᵀT`.
pub fn chsh_maximum<T: Scalar>(rho: &DensityMatrix<T>) -> T {
    let t = PauliDecomposition::of(rho).correlations;
    let mut tt = vec![T::zero(); 9];
    for i in 0..3 {
        for j in 0..3 {
            tt[3 * i + j] = (0..3).map(|k| t[k][i] * t[k][j]).sum();
        }
    }
    let ev = symmetric_eigenvalues(tt, 3);
    let top = (ev[0] + ev[1]).max(T::zero());
    (T::lit(2.0) * top.sqrt()).min(T::lit(2.0) * T::SQRT_2())
}

pub fn entanglement_report<T: Scalar>(rho: &DensityMatrix<T>) -> EntanglementReport<T> {
    let spectrum =
        eigenvalues_hermitian(&partial_transpose(rho)).expect("partial transpose is Hermitian");
    let min_pt_eigenvalue = spectrum[3];
    let negativity = spectrum
        .iter()
        .filter(|v| **v < T::zero())
        .map(|v| v.abs())
        .sum();
    let chsh_max = chsh_maximum(rho);
    EntanglementReport {
        min_pt_eigenvalue,
        negativity,
        ppt: min_pt_eigenvalue >= -T::tol(1e-10),
        chsh_max,
        chsh_violated: chsh_max > T::lit(2.0) + T::tol(1e-10),
    }
}
