//! Derivative-free minimisation (Nelder–Mead simplex).

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug)]
pub struct NelderMeadOptions<T> {
    /// Offset of the initial simplex vertices along each axis.
    pub initial_step: T,
    /// Spread of function values across the simplex regarded as flat.
    pub f_tol: T,
    /// Simplex diameter regarded as collapsed.
    pub x_tol: T,
    pub max_evals: usize,
}

impl<T: Scalar> Default for NelderMeadOptions<T> {
    fn default() -> Self {
        Self {
            initial_step: T::lit(0.1),
            f_tol: T::tol(1e-14),
            x_tol: T::tol(1e-10),
            max_evals: 4000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum<T, const D: usize> {
    pub point: [T; D],
    pub value: T,
    pub evals: usize,
}

/// Minimises `f` from `start`.
///
/// Converges when the simplex has collapsed below `x_tol`, or when values
/// agree to `f_tol` on a simplex no wider than `sqrt(x_tol)`.
pub fn nelder_mead<T: Scalar, const D: usize>(
    mut f: impl FnMut(&[T; D]) -> T,
    start: [T; D],
    options: &NelderMeadOptions<T>,
) -> Result<Minimum<T, D>> {
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let mut evals = 0usize;
    let mut eval = |x: &[T; D], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            T::infinity()
        } else {
            v
        }
    };

    let mut simplex: Vec<([T; D], T)> = Vec::with_capacity(D + 1);
    simplex.push((start, eval(&start, &mut evals)));
    for i in 0..D {
        let mut p = start;
        p[i] = p[i] + options.initial_step;
        let v = eval(&p, &mut evals);
        simplex.push((p, v));
    }

    let combine = |a: &[T; D], b: &[T; D], t: T| -> [T; D] {
        // a + t (b - a)
        let mut out = *a;
        for k in 0..D {
            out[k] = a[k] + t * (b[k] - a[k]);
        }
        out
    };

    loop {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("values are not NaN"));
        let best = simplex[0];
        let worst = simplex[D];
        let spread = (worst.1 - best.1).abs();
        let diameter = simplex[1..]
            .iter()
            .map(|(p, _)| {
                p.iter()
                    .zip(best.0.iter())
                    .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
            })
            .fold(T::zero(), |m, d| m.max(d));
        if diameter <= options.x_tol
            || (spread <= options.f_tol && diameter <= options.x_tol.sqrt())
        {
            return Ok(Minimum {
                point: best.0,
                value: best.1,
                evals,
            });
        }
        if evals >= options.max_evals {
            return Err(Error::OptimizerFailure { evals });
        }

        let mut centroid = [T::zero(); D];
        for (p, _) in &simplex[..D] {
            for k in 0..D {
                centroid[k] = centroid[k] + p[k];
            }
        }
        let inv = T::one() / T::from_usize(D).expect("dimension");
        for c in centroid.iter_mut() {
            *c = *c * inv;
        }

        let reflected = combine(&centroid, &worst.0, -T::one());
        let f_r = eval(&reflected, &mut evals);
        if f_r < best.1 {
            let expanded = combine(&centroid, &worst.0, -two);
            let f_e = eval(&expanded, &mut evals);
            simplex[D] = if f_e < f_r {
                (expanded, f_e)
            } else {
                (reflected, f_r)
            };
            continue;
        }
        if f_r < simplex[D - 1].1 {
            simplex[D] = (reflected, f_r);
            continue;
        }
        let (contracted, f_c) = if f_r < worst.1 {
            let p = combine(&centroid, &worst.0, -half);
            let v = eval(&p, &mut evals);
            (p, v)
        } else {
            let p = combine(&centroid, &worst.0, half);
            let v = eval(&p, &mut evals);
            (p, v)
        };
        if f_c < worst.1.min(f_r) {
            simplex[D] = (contracted, f_c);
            continue;
        }
        for i in 1..=D {
            let p = combine(&best.0, &simplex[i].0, half);
            let v = eval(&p, &mut evals);
            simplex[i] = (p, v);
        }
    }
}
