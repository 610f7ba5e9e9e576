//! Seeded random directions, unitaries and states.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::density::DensityMatrix;
use crate::operator::{Mat2, Mat4};
use crate::pauli::norm;
use crate::scalar::Scalar;
use crate::states::make_general;

/// Deterministic generator for `(seed, stream)`; distinct streams of one seed
/// never overlap.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

fn uniform<T: Scalar, R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> T {
    T::lit(rng.gen_range(lo..hi))
}

/// Uniform point on the unit sphere (normalised standard Gaussian triple).
pub fn random_direction<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> [T; 3] {
    loop {
        let v = [gaussian::<T, _>(rng), gaussian(rng), gaussian(rng)];
        let n = norm(&v);
        if n > T::lit(1e-6) {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// Haar-random element of SU(2): `a₀𝐈 − i(a⃗·σ⃗)` for a uniform unit quaternion.
pub fn random_local_unitary<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Mat2<T> {
    let q = loop {
        let q: [T; 4] = [gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)];
        let n = q.iter().map(|v| *v * *v).sum::<T>().sqrt();
        if n > T::lit(1e-6) {
            break q.map(|v| v / n);
        }
    };
    Mat2::from_rows([
        [Complex::new(q[0], -q[3]), Complex::new(-q[2], -q[1])],
        [Complex::new(q[2], -q[1]), Complex::new(q[0], q[3])],
    ])
}

/// `G G† / Tr(G G†)` for a complex Gaussian `G` (full-rank generic state).
pub fn random_ginibre_state<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix<T> {
    let mut g = Mat4::<T>::zeros();
    for i in 0..4 {
        for j in 0..4 {
            g[(i, j)] = Complex::new(gaussian(rng), gaussian(rng));
        }
    }
    let m = g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale(T::one() / tr)).expect("Ginibre product is a state")
}

/// Random valid state with diagonal correlation matrix: parameters drawn
/// uniformly from a randomly shrunk cube, rejected until positive.
pub fn random_in_class_state<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix<T> {
    loop {
        let s: f64 = rng.gen_range(0.0..1.0);
        let mut draw = || -> [T; 3] {
            [
                uniform(rng, -s, s),
                uniform(rng, -s, s),
                uniform(rng, -s, s),
            ]
        };
        let (x, y, c) = (draw(), draw(), draw());
        if let Ok(rho) = make_general(x, y, c) {
            return rho;
        }
    }
}

/// Random valid Bell-diagonal state, `c` uniform on the tetrahedron of valid
/// correlations (rejection from the cube).
pub fn random_bell_diagonal<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix<T> {
    loop {
        let c = [
            uniform(rng, -1.0, 1.0),
            uniform(rng, -1.0, 1.0),
            uniform(rng, -1.0, 1.0),
        ];
        if let Ok(rho) = make_general([T::zero(); 3], [T::zero(); 3], c) {
            return rho;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directions_are_unit() {
        let mut rng = seeded_rng(1, 0);
        for _ in 0..100 {
            let d: [f64; 3] = random_direction(&mut rng);
            assert!((norm(&d) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn local_unitaries_are_unitary() {
        let mut rng = seeded_rng(2, 0);
        for _ in 0..100 {
            let u: Mat2<f64> = random_local_unitary(&mut rng);
            assert!(u.unitarity_residual() < 1e-14);
        }
    }

    #[test]
    fn streams_differ_and_repeat() {
        let a: f64 = seeded_rng(5, 0).gen();
        let b: f64 = seeded_rng(5, 1).gen();
        let c: f64 = seeded_rng(5, 0).gen();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }
}
