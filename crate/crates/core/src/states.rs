//! Constructors and validation for the state families used in the analysis.

use num_complex::Complex;
use serde::Serialize;

use crate::density::DensityMatrix;
use crate::eigen::eigenvalues_hermitian;
use crate::error::{Error, Result};
use crate::operator::{bloch_operator, cplx, tensor, Mat2, Mat4};
use crate::pauli::{norm, PauliDecomposition};
use crate::scalar::Scalar;

/// Tolerance on off-diagonal correlations for membership in the witness class.
pub const CLASS_TOLERANCE: f64 = 1e-9;

/// Outcome of [`validate`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StateValidity {
    pub hermitian: bool,
    pub trace_one: bool,
    pub psd: bool,
    pub min_eigenvalue: f64,
    /// Correlation matrix diagonal to [`CLASS_TOLERANCE`].
    pub in_witness_class: bool,
}

impl StateValidity {
    pub fn is_valid(&self) -> bool {
        self.hermitian && self.trace_one && self.psd
    }
}

/// Checks every density-operator property without failing.
pub fn validate<T: Scalar>(m: &Mat4<T>) -> StateValidity {
    let hermitian = m.hermitian_residual() <= T::tol(1e-10);
    let h = m.hermitian_part();
    let trace_one =
        (h.trace().re - T::one()).abs() <= T::tol(1e-12) && m.trace().im.abs() <= T::tol(1e-12);
    let min_eigenvalue = eigenvalues_hermitian(&h).expect("Hermitian part")[3];
    let decomposition = PauliDecomposition::of_operator(&h);
    StateValidity {
        hermitian,
        trace_one,
        psd: min_eigenvalue >= -T::tol(1e-10),
        min_eigenvalue: min_eigenvalue.as_f64(),
        in_witness_class: decomposition.max_off_diagonal() <= T::tol(CLASS_TOLERANCE),
    }
}

/// State with local Bloch vectors `x`, `y` and diagonal correlations `c`.
pub fn make_general<T: Scalar>(x: [T; 3], y: [T; 3], c: [T; 3]) -> Result<DensityMatrix<T>> {
    DensityMatrix::new(PauliDecomposition::diagonal(x, y, c).compose())
}

/// `¼(𝐈 + Σ cᵢ σᵢ⊗σᵢ)`.
pub fn make_bell_diagonal<T: Scalar>(c: [T; 3]) -> Result<DensityMatrix<T>> {
    let rho = make_general([T::zero(); 3], [T::zero(); 3], c)?;
    #[cfg(debug_assertions)]
    {
        let mut predicted = bell_diagonal_spectrum(c);
        predicted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let computed = rho.eigenvalues();
        for (p, q) in predicted.iter().zip(&computed) {
            debug_assert!((*p - *q).abs() <= T::tol(1e-10), "Bell-diagonal sign rule");
        }
    }
    Ok(rho)
}

/// `(1 + s₁c₁ + s₂c₂ + s₃c₃)/4` over the four sign patterns with an odd
/// number of minus signs; these are the weights on Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
pub fn bell_diagonal_spectrum<T: Scalar>(c: [T; 3]) -> [T; 4] {
    let quarter = T::lit(0.25);
    [
        (T::one() + c[0] - c[1] + c[2]) * quarter,
        (T::one() - c[0] + c[1] + c[2]) * quarter,
        (T::one() + c[0] + c[1] - c[2]) * quarter,
        (T::one() - c[0] - c[1] - c[2]) * quarter,
    ]
}

/// `|Ψ⁻⟩⟨Ψ⁻|` with `|Ψ⁻⟩ = (|01⟩ − |10⟩)/√2`.
pub fn singlet<T: Scalar>() -> DensityMatrix<T> {
    let h = T::FRAC_1_SQRT_2();
    let z = T::zero();
    let psi = [
        Complex::new(z, z),
        Complex::new(h, z),
        Complex::new(-h, z),
        Complex::new(z, z),
    ];
    DensityMatrix::pure(&psi).expect("normalised singlet")
}

/// Werner state `(1−α)𝐈/4 + α|Ψ⁻⟩⟨Ψ⁻|`.
pub fn make_werner<T: Scalar>(alpha: T) -> Result<DensityMatrix<T>> {
    if !(alpha >= T::zero() && alpha <= T::one()) {
        return Err(Error::AlphaOutOfRange(alpha.as_f64()));
    }
    let mixed = Mat4::<T>::identity().scale((T::one() - alpha) * T::lit(0.25));
    DensityMatrix::new(mixed + singlet::<T>().matrix().scale(alpha))
}

/// Orthonormal single-qubit basis given by a Bloch-sphere direction:
/// `|e₀⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩` and the orthogonal `|e₁⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BasisAngles<T> {
    pub theta: T,
    pub phi: T,
}

impl<T: Scalar> BasisAngles<T> {
    pub fn new(theta: T, phi: T) -> Result<Self> {
        if !(theta.is_finite() && phi.is_finite()) {
            return Err(Error::InvalidBasis(format!(
                "non-finite angles ({theta}, {phi})"
            )));
        }
        Ok(Self { theta, phi })
    }

    /// The computational basis.
    pub fn computational() -> Self {
        Self {
            theta: T::zero(),
            phi: T::zero(),
        }
    }

    /// Angles of a nonzero Bloch direction, in `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    pub fn from_axis(n: &[T; 3]) -> Self {
        let r = norm(n);
        let theta = (n[2] / r).max(-T::one()).min(T::one()).acos();
        let mut phi = n[1].atan2(n[0]);
        if phi < T::zero() {
            phi = phi + T::TAU();
        }
        if phi >= T::TAU() {
            phi = phi - T::TAU();
        }
        Self { theta, phi }
    }

    /// Same measurement, with angles reduced to `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    pub fn canonical(&self) -> Self {
        Self::from_axis(&self.axis())
    }

    /// Bloch vector of `|e₀⟩`.
    pub fn axis(&self) -> [T; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `[|e₀⟩, |e₁⟩]`.
    pub fn vectors(&self) -> [[Complex<T>; 2]; 2] {
        let half = self.theta * T::lit(0.5);
        let (s, c) = half.sin_cos();
        let phase = Complex::from_polar(T::one(), self.phi);
        let zero = T::zero();
        [
            [Complex::new(c, zero), phase * s],
            [-phase.conj() * s, Complex::new(c, zero)],
        ]
    }

    /// `[|e₀⟩⟨e₀|, |e₁⟩⟨e₁|]`.
    pub fn projectors(&self) -> [Mat2<T>; 2] {
        let [e0, e1] = self.vectors();
        [Mat2::outer(&e0, &e0), Mat2::outer(&e1, &e1)]
    }
}

/// `Σ pᵢⱼ |aᵢ⟩⟨aᵢ| ⊗ |bⱼ⟩⟨bⱼ|`: zero discord by construction.
pub fn make_classical<T: Scalar>(
    p: [[T; 2]; 2],
    basis_a: BasisAngles<T>,
    basis_b: BasisAngles<T>,
) -> Result<DensityMatrix<T>> {
    let flat = [p[0][0], p[0][1], p[1][0], p[1][1]];
    if let Some(bad) = flat.iter().find(|v| !(**v >= -T::tol(1e-12))) {
        return Err(Error::InvalidProbabilities(format!("negative entry {bad}")));
    }
    let total: T = flat.iter().copied().sum();
    if !((total - T::one()).abs() <= T::tol(1e-12)) {
        return Err(Error::InvalidProbabilities(format!(
            "entries sum to {total}"
        )));
    }
    let pa = basis_a.projectors();
    let pb = basis_b.projectors();
    for projectors in [&pa, &pb] {
        let overlap = projectors[0] * projectors[1];
        if overlap.max_abs_diff(&Mat2::zeros()) > T::tol(1e-12) {
            return Err(Error::InvalidBasis("basis vectors not orthogonal".into()));
        }
    }
    let mut m = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m = m + tensor(&pa[i], &pb[j]).scale(p[i][j].max(T::zero()));
        }
    }
    DensityMatrix::new(m)
}

/// `ρᵃ ⊗ ρᵇ` from the two Bloch vectors.
pub fn make_product<T: Scalar>(bloch_a: [T; 3], bloch_b: [T; 3]) -> Result<DensityMatrix<T>> {
    for v in [&bloch_a, &bloch_b] {
        let n = norm(v);
        if !(n <= T::one() + T::tol(1e-12)) {
            return Err(Error::BlochNorm(n.as_f64()));
        }
    }
    DensityMatrix::new(tensor(&qubit_state(&bloch_a), &qubit_state(&bloch_b)))
}

/// `(𝐈 + n⃗·σ⃗)/2`.
pub fn qubit_state<T: Scalar>(bloch: &[T; 3]) -> Mat2<T> {
    (Mat2::identity() + bloch_operator(bloch)).scale(T::lit(0.5))
}

/// `|00⟩⟨00|`-style computational basis projector for index `k ∈ 0..4`.
pub fn basis_state<T: Scalar>(k: usize) -> DensityMatrix<T> {
    let mut psi = [cplx::<T>(0.0, 0.0); 4];
    psi[k] = cplx(1.0, 0.0);
    DensityMatrix::pure(&psi).expect("unit vector")
}
