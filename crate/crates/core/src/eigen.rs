//! Spectra of small Hermitian operators and the von Neumann entropy.
//!
//! A Hermitian `H = A + iB` is diagonalised through its real symmetric
//! embedding `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every
//! eigenvalue doubled. The embedding is reduced by cyclic Jacobi rotations.

use crate::error::{Error, Result};
use crate::operator::CMatrix;
use crate::scalar::Scalar;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues of a real symmetric `n×n` matrix given row-major, descending.
pub fn symmetric_eigenvalues<T: Scalar>(mut a: Vec<T>, n: usize) -> Vec<T> {
    assert_eq!(a.len(), n * n, "matrix storage does not match dimension");
    let at = |i: usize, j: usize| i * n + j;
    let scale = a.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if scale > T::zero() {
        let eps = T::epsilon();
        for _ in 0..MAX_SWEEPS {
            let mut off = T::zero();
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off + a[at(p, q)] * a[at(p, q)];
                }
            }
            if off == T::zero() || off.sqrt() <= eps * eps * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[at(p, q)];
                    let diag = a[at(p, p)].abs() + a[at(q, q)].abs();
                    if apq.abs() <= T::min_positive_value()
                        || apq.abs() <= eps * T::lit(1e-3) * diag
                    {
                        a[at(p, q)] = T::zero();
                        a[at(q, p)] = T::zero();
                        continue;
                    }
                    let theta = (a[at(q, q)] - a[at(p, p)]) / (apq + apq);
                    let t = if theta.abs() > T::lit(1e150).min(T::max_value().sqrt()) {
                        T::one() / (theta + theta)
                    } else {
                        let sign = if theta >= T::zero() {
                            T::one()
                        } else {
                            -T::one()
                        };
                        sign / (theta.abs() + (theta * theta + T::one()).sqrt())
                    };
                    let c = T::one() / (t * t + T::one()).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[at(k, p)];
                        let akq = a[at(k, q)];
                        a[at(k, p)] = c * akp - s * akq;
                        a[at(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[at(p, k)];
                        let aqk = a[at(q, k)];
                        a[at(p, k)] = c * apk - s * aqk;
                        a[at(q, k)] = s * apk + c * aqk;
                    }
                }
            }
        }
    }
    let mut values: Vec<T> = (0..n).map(|i| a[at(i, i)]).collect();
    values.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    values
}

/// Real eigenvalues of a Hermitian operator, descending.
///
/// Residual anti-Hermitian parts up to `1e-10` are removed by symmetrising;
/// anything larger is rejected.
pub fn eigenvalues_hermitian<T: Scalar, const N: usize>(h: &CMatrix<T, N>) -> Result<Vec<T>> {
    let residual = h.hermitian_residual();
    if !(residual <= T::tol(1e-10)) {
        return Err(Error::NotHermitian {
            residual: residual.as_f64(),
        });
    }
    let h = h.hermitian_part();
    let n = 2 * N;
    let mut embed = vec![T::zero(); n * n];
    for i in 0..N {
        for j in 0..N {
            let z = h[(i, j)];
            embed[i * n + j] = z.re;
            embed[(i + N) * n + (j + N)] = z.re;
            embed[i * n + (j + N)] = -z.im;
            embed[(i + N) * n + j] = z.im;
        }
    }
    let doubled = symmetric_eigenvalues(embed, n);
    Ok(doubled
        .chunks(2)
        .map(|pair| (pair[0] + pair[1]) * T::lit(0.5))
        .collect())
}

/// `-Σ p log₂ p` over a probability vector, with `0·log 0 = 0`.
pub fn shannon_entropy<T: Scalar>(probabilities: impl IntoIterator<Item = T>) -> T {
    probabilities
        .into_iter()
        .filter(|&p| p > T::zero())
        .map(|p| -p * p.log2())
        .sum()
}

/// Binary entropy `h(p)` in bits.
pub fn binary_entropy<T: Scalar>(p: T) -> T {
    shannon_entropy([p, T::one() - p])
}

/// Von Neumann entropy `S(ρ) = -Tr ρ log₂ ρ` in bits, for any density operator
/// on one or two qubits.
pub fn von_neumann_entropy<T: Scalar, const N: usize>(rho: &CMatrix<T, N>) -> Result<T> {
    let trace = rho.trace().re;
    if (trace - T::one()).abs() > T::tol(1e-12) {
        return Err(Error::TraceNotOne {
            trace: trace.as_f64(),
        });
    }
    let spectrum = eigenvalues_hermitian(rho)?;
    entropy_of_spectrum(&spectrum)
}

/// Entropy of an already computed density spectrum; eigenvalues within the
/// PSD tolerance below zero are clipped.
pub fn entropy_of_spectrum<T: Scalar>(spectrum: &[T]) -> Result<T> {
    if let Some(&min) = spectrum.iter().min_by(|a, b| a.partial_cmp(b).unwrap()) {
        if min < -T::tol(1e-10) {
            return Err(Error::NotPositive {
                min_eigenvalue: min.as_f64(),
            });
        }
    }
    Ok(shannon_entropy(
        spectrum.iter().map(|&p| p.max(T::zero()).min(T::one())),
    ))
}
