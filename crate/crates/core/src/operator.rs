//! Dense complex operators on one and two qubits.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Square complex matrix of fixed dimension `N`, stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix<T, const N: usize> {
    entries: [[Complex<T>; N]; N],
}

pub type Mat2<T> = CMatrix<T, 2>;
pub type Mat4<T> = CMatrix<T, 4>;

/// Which qubit of the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

#[inline]
pub(crate) fn cplx<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

impl<T: Scalar, const N: usize> CMatrix<T, N> {
    pub fn zeros() -> Self {
        Self {
            entries: [[Complex::new(T::zero(), T::zero()); N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.entries[i][i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_rows(entries: [[Complex<T>; N]; N]) -> Self {
        Self { entries }
    }

    pub fn from_real(rows: [[T; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = Complex::new(rows[i][j], T::zero());
            }
        }
        m
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[Complex<T>; N], v: &[Complex<T>; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> &[[Complex<T>; N]; N] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = self.entries[j][i].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[i][j] = self.entries[j][i];
            }
        }
        m
    }

    pub fn trace(&self) -> Complex<T> {
        (0..N).fold(Complex::new(T::zero(), T::zero()), |acc, i| {
            acc + self.entries[i][i]
        })
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_complex(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        let mut m = *self;
        for row in m.entries.iter_mut() {
            for z in row.iter_mut() {
                *z = f(*z);
            }
        }
        m
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermitian_residual(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    /// `(H + H†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(T::lit(0.5))
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        *u * *self * u.adjoint()
    }

    /// Largest entrywise deviation of `self · self†` from the identity.
    pub fn unitarity_residual(&self) -> T {
        (*self * self.adjoint()).max_abs_diff(&Self::identity())
    }

    /// `Tr(self · other)`, computed without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..N {
            for k in 0..N {
                acc = acc + self.entries[i][k] * other.entries[k][i];
            }
        }
        acc
    }

    pub fn apply(&self, v: &[Complex<T>; N]) -> [Complex<T>; N] {
        let mut out = [Complex::new(T::zero(), T::zero()); N];
        for i in 0..N {
            for j in 0..N {
                out[i] = out[i] + self.entries[i][j] * v[j];
            }
        }
        out
    }
}

impl<T, const N: usize> Index<(usize, usize)> for CMatrix<T, N> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.entries[i][j]
    }
}

impl<T, const N: usize> IndexMut<(usize, usize)> for CMatrix<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.entries[i][j]
    }
}

impl<T: Scalar, const N: usize> Add for CMatrix<T, N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.entries[i][j] = self.entries[i][j] + rhs.entries[i][j];
            }
        }
        self
    }
}

impl<T: Scalar, const N: usize> Sub for CMatrix<T, N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.entries[i][j] = self.entries[i][j] - rhs.entries[i][j];
            }
        }
        self
    }
}

impl<T: Scalar, const N: usize> Neg for CMatrix<T, N> {
    type Output = Self;

    fn neg(self) -> Self {
        self.map(|z| -z)
    }
}

impl<T: Scalar, const N: usize> Mul for CMatrix<T, N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.entries[i][k];
                for j in 0..N {
                    out.entries[i][j] = out.entries[i][j] + a * rhs.entries[k][j];
                }
            }
        }
        out
    }
}

/// The identity (`i = 0`) or one of the Pauli matrices σ₁, σ₂, σ₃.
pub fn pauli<T: Scalar>(i: usize) -> Result<Mat2<T>> {
    let z = cplx::<T>(0.0, 0.0);
    let one = cplx::<T>(1.0, 0.0);
    let m = match i {
        0 => [[one, z], [z, one]],
        1 => [[z, one], [one, z]],
        2 => [[z, cplx(0.0, -1.0)], [cplx(0.0, 1.0), z]],
        3 => [[one, z], [z, -one]],
        _ => return Err(Error::PauliIndex(i)),
    };
    Ok(Mat2::from_rows(m))
}

/// Kronecker product: `(A⊗B)[2i+k, 2j+l] = A[i,j]·B[k,l]`.
pub fn tensor<T: Scalar>(a: &Mat2<T>, b: &Mat2<T>) -> Mat4<T> {
    let mut out = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

/// `σᵢ ⊗ σⱼ` with `0` standing for the identity.
pub(crate) fn pauli_product<T: Scalar>(i: usize, j: usize) -> Mat4<T> {
    tensor(
        &pauli(i).expect("index in range"),
        &pauli(j).expect("index in range"),
    )
}

/// `n⃗·σ⃗` for a real three-vector.
pub fn bloch_operator<T: Scalar>(n: &[T; 3]) -> Mat2<T> {
    (1..=3).fold(Mat2::zeros(), |acc, k| {
        acc + pauli::<T>(k).expect("index in range").scale(n[k - 1])
    })
}

/// Reduced operator on the kept qubit.
pub fn partial_trace<T: Scalar>(rho: &DensityMatrix<T>, keep: Subsystem) -> Mat2<T> {
    partial_trace_operator(rho.matrix(), keep)
}

pub(crate) fn partial_trace_operator<T: Scalar>(m: &Mat4<T>, keep: Subsystem) -> Mat2<T> {
    let mut out = Mat2::zeros();
    for r in 0..2 {
        for c in 0..2 {
            out[(r, c)] = match keep {
                Subsystem::A => m[(2 * r, 2 * c)] + m[(2 * r + 1, 2 * c + 1)],
                Subsystem::B => m[(r, c)] + m[(2 + r, 2 + c)],
            };
        }
    }
    out
}

/// `Tr(O ρ)` for a Hermitian observable.
pub fn expectation<T: Scalar>(rho: &DensityMatrix<T>, observable: &Mat4<T>) -> Result<T> {
    let residual = observable.hermitian_residual();
    if residual > T::tol(1e-10) {
        return Err(Error::NotHermitian {
            residual: residual.as_f64(),
        });
    }
    Ok(observable.trace_product(rho.matrix()).re)
}
