//! Mutual information, measured (classical) mutual information and quantum
//! discord, with projective measurements on qubit b conditioning qubit a.

use serde::Serialize;

use crate::density::DensityMatrix;
use crate::eigen::{binary_entropy, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::operator::{partial_trace, partial_trace_operator, tensor, Mat2, Subsystem};
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::scalar::Scalar;
use crate::states::BasisAngles;

/// Rank-1 projective measurement `{|o₀⟩⟨o₀|, |o₁⟩⟨o₁|}` on qubit b.
pub type MeasurementBasis<T> = BasisAngles<T>;

/// Outcomes with probability at or below this contribute nothing.
pub const NEGLIGIBLE_PROBABILITY: f64 = 1e-12;

/// `I(ρ) = S(ρᵃ) + S(ρᵇ) − S(ρ)` in bits.
pub fn mutual_information<T: Scalar>(rho: &DensityMatrix<T>) -> T {
    let s = |m: &Mat2<T>| von_neumann_entropy(m).expect("marginal of a valid state");
    let joint = von_neumann_entropy(rho.matrix()).expect("valid state");
    s(&partial_trace(rho, Subsystem::A)) + s(&partial_trace(rho, Subsystem::B)) - joint
}

fn check_outcome(j: usize) -> Result<()> {
    if j > 1 {
        return Err(Error::InvalidOutcome(j));
    }
    Ok(())
}

/// `Pr(oⱼ) = Tr[(𝐈 ⊗ |oⱼ⟩⟨oⱼ|) ρ]`.
pub fn outcome_probability<T: Scalar>(
    rho: &DensityMatrix<T>,
    m: &MeasurementBasis<T>,
    j: usize,
) -> Result<T> {
    check_outcome(j)?;
    let lift = tensor(&Mat2::identity(), &m.projectors()[j]);
    Ok(lift.trace_product(rho.matrix()).re)
}

/// `ρⱼᵃ = Tr_b[(𝐈⊗Pⱼ) ρ (𝐈⊗Pⱼ)] / Pr(oⱼ)`.
pub fn conditioned_state<T: Scalar>(
    rho: &DensityMatrix<T>,
    m: &MeasurementBasis<T>,
    j: usize,
) -> Result<Mat2<T>> {
    check_outcome(j)?;
    let lift = tensor(&Mat2::identity(), &m.projectors()[j]);
    let projected = lift * *rho.matrix() * lift;
    let p = projected.trace().re;
    if !(p > T::tol(NEGLIGIBLE_PROBABILITY)) {
        return Err(Error::ZeroProbabilityOutcome {
            outcome: j,
            probability: p.as_f64(),
        });
    }
    Ok(partial_trace_operator(&projected, Subsystem::A).scale(T::one() / p))
}

/// Entropy of a unit-trace single-qubit operator from its Bloch length.
fn qubit_entropy<T: Scalar>(m: &Mat2<T>) -> T {
    let diff = (m[(0, 0)] - m[(1, 1)]).re;
    let r = (diff * diff + T::lit(4.0) * m[(0, 1)].norm_sqr())
        .sqrt()
        .min(T::one());
    binary_entropy((T::one() + r) * T::lit(0.5))
}

/// `Σⱼ Pr(oⱼ) S(ρⱼᵃ)`, contracting `⟨oⱼ|ρ|oⱼ⟩_b` directly.
fn conditional_entropy<T: Scalar>(rho: &DensityMatrix<T>, m: &MeasurementBasis<T>) -> T {
    let mut total = T::zero();
    for o in m.vectors() {
        let mut block = Mat2::<T>::zeros();
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = num_complex::Complex::new(T::zero(), T::zero());
                for k in 0..2 {
                    for l in 0..2 {
                        acc = acc + o[k].conj() * rho.matrix()[(2 * r + k, 2 * c + l)] * o[l];
                    }
                }
                block[(r, c)] = acc;
            }
        }
        let p = block.trace().re;
        if p > T::tol(NEGLIGIBLE_PROBABILITY) {
            total = total + p * qubit_entropy(&block.scale(T::one() / p));
        }
    }
    total
}

/// `J(ρ, Ô) = S(ρᵃ) − Σⱼ Pr(oⱼ) S(ρⱼᵃ)` in bits.
pub fn measured_mutual_information<T: Scalar>(
    rho: &DensityMatrix<T>,
    m: &MeasurementBasis<T>,
) -> T {
    let marginal = qubit_entropy(&partial_trace(rho, Subsystem::A));
    marginal - conditional_entropy(rho, m)
}

/// Search settings for the maximisation over measurement bases.
#[derive(Clone, Copy, Debug)]
pub struct DiscordOptions<T> {
    /// Grid points in θ over `[0, π]`.
    pub theta_points: usize,
    /// Grid points in φ over `[0, 2π)`.
    pub phi_points: usize,
    /// Number of best grid points refined locally.
    pub restarts: usize,
    pub simplex: NelderMeadOptions<T>,
}

impl<T: Scalar> Default for DiscordOptions<T> {
    fn default() -> Self {
        Self {
            theta_points: 13,
            phi_points: 25,
            restarts: 3,
            simplex: NelderMeadOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalCorrelation<T> {
    pub value: T,
    pub basis: MeasurementBasis<T>,
    pub evals: usize,
}

/// `max_Ô J(ρ, Ô)` over projective measurements on b: a coarse grid in
/// (θ, φ) followed by simplex refinement of the best grid points.
pub fn classical_correlation<T: Scalar>(rho: &DensityMatrix<T>) -> Result<ClassicalCorrelation<T>> {
    classical_correlation_with(rho, &DiscordOptions::default())
}

pub fn classical_correlation_with<T: Scalar>(
    rho: &DensityMatrix<T>,
    options: &DiscordOptions<T>,
) -> Result<ClassicalCorrelation<T>> {
    if options.theta_points < 2 || options.phi_points < 1 || options.restarts < 1 {
        return Err(Error::InvalidArgument("empty measurement grid".into()));
    }
    let marginal = qubit_entropy(&partial_trace(rho, Subsystem::A));
    let objective = |x: &[T; 2]| {
        conditional_entropy(
            rho,
            &BasisAngles {
                theta: x[0],
                phi: x[1],
            },
        )
    };

    let d_theta = T::PI() / T::from_usize(options.theta_points - 1).unwrap();
    let d_phi = T::TAU() / T::from_usize(options.phi_points).unwrap();
    let mut grid = Vec::with_capacity(options.theta_points * options.phi_points);
    for i in 0..options.theta_points {
        for k in 0..options.phi_points {
            let x = [
                d_theta * T::from_usize(i).unwrap(),
                d_phi * T::from_usize(k).unwrap(),
            ];
            grid.push((x, objective(&x)));
        }
    }
    let mut evals = grid.len();
    grid.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite entropies"));

    let simplex = NelderMeadOptions {
        initial_step: d_theta.min(d_phi) * T::lit(0.5),
        ..options.simplex
    };
    let mut best: Option<([T; 2], T)> = None;
    for (start, _) in grid.iter().take(options.restarts) {
        let m = nelder_mead(objective, *start, &simplex)?;
        evals += m.evals;
        if best.is_none_or(|(_, v)| m.value < v) {
            best = Some((m.point, m.value));
        }
    }
    let (point, conditional) = best.expect("at least one restart");
    Ok(ClassicalCorrelation {
        value: (marginal - conditional).max(T::zero()),
        basis: BasisAngles {
            theta: point[0],
            phi: point[1],
        }
        .canonical(),
        evals,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscordReport<T> {
    pub mutual_information: T,
    /// `J*`, the maximised measured mutual information.
    pub classical_correlation: T,
    pub discord: T,
    pub optimal_basis: MeasurementBasis<T>,
    pub optimizer_evals: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscordRecord {
    #[serde(rename = "I")]
    pub mutual_information: f64,
    #[serde(rename = "J_star")]
    pub classical_correlation: f64,
    #[serde(rename = "D")]
    pub discord: f64,
    pub theta_opt: f64,
    pub phi_opt: f64,
    pub evals: usize,
}

impl<T: Scalar> DiscordReport<T> {
    pub fn record(&self) -> DiscordRecord {
        DiscordRecord {
            mutual_information: self.mutual_information.as_f64(),
            classical_correlation: self.classical_correlation.as_f64(),
            discord: self.discord.as_f64(),
            theta_opt: self.optimal_basis.theta.as_f64(),
            phi_opt: self.optimal_basis.phi.as_f64(),
            evals: self.optimizer_evals,
        }
    }
}

/// `D(ρ) = I(ρ) − J*(ρ)`; values within `1e-8` below zero are clamped.
pub fn discord<T: Scalar>(rho: &DensityMatrix<T>) -> Result<DiscordReport<T>> {
    discord_with(rho, &DiscordOptions::default())
}

pub fn discord_with<T: Scalar>(
    rho: &DensityMatrix<T>,
    options: &DiscordOptions<T>,
) -> Result<DiscordReport<T>> {
    let mutual_information = mutual_information(rho);
    let cc = classical_correlation_with(rho, options)?;
    let mut discord = mutual_information - cc.value;
    if discord < T::zero() && discord >= -T::tol(1e-8) {
        discord = T::zero();
    }
    Ok(DiscordReport {
        mutual_information,
        classical_correlation: cc.value,
        discord,
        optimal_basis: cc.basis,
        optimizer_evals: cc.evals,
    })
}
