//! Test-side oracles. These recompute quantities from the raw matrix entries
//! through formulas the library does not use, so agreement is meaningful.
#![allow(dead_code)]

use num_complex::Complex64 as C;
use qcorr::{Matrix4, State};
use rand::Rng;
use std::f64::consts::PI;

pub fn paulis() -> [[[C; 2]; 2]; 4] {
    let o = C::new(0.0, 0.0);
    let l = C::new(1.0, 0.0);
    let i = C::new(0.0, 1.0);
    [
        [[l, o], [o, l]],
        [[o, l], [l, o]],
        [[o, -i], [i, o]],
        [[l, o], [o, -l]],
    ]
}

/// `Tr[ρ (σᵢ ⊗ σⱼ)]` by explicit index sum.
pub fn pauli_expectation(rho: &Matrix4, i: usize, j: usize) -> f64 {
    let s = paulis();
    let mut acc = C::new(0.0, 0.0);
    for r in 0..4 {
        for c in 0..4 {
            let op = s[i][c / 2][r / 2] * s[j][c % 2][r % 2];
            acc += rho[(r, c)] * op;
        }
    }
    acc.re
}

pub struct Bloch {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub t: [[f64; 3]; 3],
}

pub fn bloch(rho: &State) -> Bloch {
    let m = rho.matrix();
    let mut b = Bloch {
        x: [0.0; 3],
        y: [0.0; 3],
        t: [[0.0; 3]; 3],
    };
    for i in 0..3 {
        b.x[i] = pauli_expectation(m, i + 1, 0);
        b.y[i] = pauli_expectation(m, 0, i + 1);
        for j in 0..3 {
            b.t[i][j] = pauli_expectation(m, i + 1, j + 1);
        }
    }
    b
}

fn norm(v: &[f64; 3]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn h_bits(p: f64) -> f64 {
    let term = |q: f64| if q <= 0.0 { 0.0 } else { -q * q.log2() };
    term(p) + term(1.0 - p)
}

/// Entropy of a qubit with Bloch vector `r`.
pub fn qubit_entropy(r: &[f64; 3]) -> f64 {
    h_bits((1.0 + norm(r).min(1.0)) / 2.0)
}

pub fn direction(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

/// Measured mutual information for a spin measurement of b along `n`, from
/// the post-measurement Bloch vectors `(x ± T n)/(1 ± y·n)` of a.
pub fn measured_j(b: &Bloch, n: &[f64; 3]) -> f64 {
    let yn: f64 = (0..3).map(|k| b.y[k] * n[k]).sum();
    let tn = b.t.map(|row| (0..3).map(|j| row[j] * n[j]).sum::<f64>());
    let mut conditional = 0.0;
    for s in [1.0, -1.0] {
        let p = (1.0 + s * yn) / 2.0;
        if p <= 1e-14 {
            continue;
        }
        let r = [0, 1, 2].map(|i| (b.x[i] + s * tn[i]) / (1.0 + s * yn));
        conditional += p * qubit_entropy(&r);
    }
    qubit_entropy(&b.x) - conditional
}

/// Max of `measured_j` over a `theta_points × phi_points` grid.
pub fn grid_j_star(b: &Bloch, theta_points: usize, phi_points: usize) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 0..theta_points {
        let theta = PI * i as f64 / (theta_points - 1) as f64;
        for k in 0..phi_points {
            let phi = 2.0 * PI * k as f64 / phi_points as f64;
            best = best.max(measured_j(b, &direction(theta, phi)));
        }
    }
    best
}

/// CHSH value maximised over the two a-settings for fixed b-settings:
/// `|T(b + b')| + |T(b − b')|`.
fn chsh_given_b(t: &[[f64; 3]; 3], b1: &[f64; 3], b2: &[f64; 3]) -> f64 {
    let apply = |v: [f64; 3]| [0, 1, 2].map(|i| (0..3).map(|j| t[i][j] * v[j]).sum::<f64>());
    let plus = apply([0, 1, 2].map(|k| b1[k] + b2[k]));
    let minus = apply([0, 1, 2].map(|k| b1[k] - b2[k]));
    norm(&plus) + norm(&minus)
}

/// Brute-force CHSH maximum over the b-setting angles: a coarse grid, then
/// shrinking local grids around the best few cells.
pub fn chsh_brute_force(rho: &State) -> f64 {
    let t = bloch(rho).t;
    let f = |p: &[f64; 4]| chsh_given_b(&t, &direction(p[0], p[1]), &direction(p[2], p[3]));
    let (nt, np) = (13, 24);
    let mut coarse = Vec::new();
    for a in 0..nt {
        for b in 0..np {
            for c in 0..nt {
                for d in 0..np {
                    let p = [
                        PI * a as f64 / (nt - 1) as f64,
                        2.0 * PI * b as f64 / np as f64,
                        PI * c as f64 / (nt - 1) as f64,
                        2.0 * PI * d as f64 / np as f64,
                    ];
                    coarse.push((f(&p), p));
                }
            }
        }
    }
    coarse.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
    let mut best = coarse[0].0;
    for &(v0, p0) in coarse.iter().take(8) {
        let (mut v, mut p) = (v0, p0);
        let mut step = PI / 12.0;
        while step > 1e-7 {
            let mut improved = false;
            for offsets in 0..81 {
                let mut q = p;
                let mut code = offsets;
                for slot in q.iter_mut() {
                    *slot += step * ((code % 3) as f64 - 1.0);
                    code /= 3;
                }
                let w = f(&q);
                if w > v {
                    v = w;
                    p = q;
                    improved = true;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        best = best.max(v);
    }
    best
}

/// A state of one of the χ forms with random parameters: `(form, state)`
/// where form is 1..=4.
pub fn random_chi_state<R: Rng>(rng: &mut R) -> (usize, State) {
    let form = rng.gen_range(1..=4);
    let state = if form < 4 {
        let mut c = [0.0; 3];
        c[form - 1] = rng.gen_range(-1.0..=1.0);
        qcorr::states::make_bell_diagonal(c).unwrap()
    } else {
        let total: f64 = rng.gen_range(0.0..=1.0);
        let share: f64 = rng.gen_range(0.0..=1.0);
        let x = scaled(qcorr::sampling::random_direction(rng), total * share);
        let y = scaled(
            qcorr::sampling::random_direction(rng),
            total * (1.0 - share),
        );
        qcorr::states::make_general(x, y, [0.0; 3]).unwrap()
    };
    (form, state)
}

fn scaled(v: [f64; 3], s: f64) -> [f64; 3] {
    v.map(|a| a * s)
}

/// Valid Bell-diagonal correlations with a chosen number of nonzero entries,
/// each of magnitude at least `floor`.
pub fn random_sparse_bell_diagonal<R: Rng>(rng: &mut R, floor: f64) -> ([f64; 3], State) {
    let nonzero = rng.gen_range(0..=3usize);
    loop {
        let mut c = [0.0; 3];
        let mut slots = [0usize, 1, 2];
        for k in 0..3 {
            let j = rng.gen_range(k..3);
            slots.swap(k, j);
        }
        for &k in &slots[..nonzero] {
            let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            c[k] = sign * rng.gen_range(floor..=1.0);
        }
        if let Ok(rho) = qcorr::states::make_bell_diagonal(c) {
            return (c, rho);
        }
    }
}
