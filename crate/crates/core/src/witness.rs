//! Nonlinear classicality witness for two-qubit states whose correlation
//! matrix is diagonal.
//!
//! With `Ôᵢ = σᵢ⊗σᵢ` (i = 1, 2, 3) and `Ô₄ = z⃗·σ⃗⊗𝐈 + 𝐈⊗w⃗·σ⃗` for unit
//! directions `z⃗`, `w⃗`, the witness is
//!
//! ```text
//! W = Σ_{i<j} |⟨Ôᵢ⟩ ⟨Ôⱼ⟩|
//! ```
//!
//! over all six pairs. `W = 0` exactly when at most one of the four
//! expectations is nonzero; such states are one of the classical forms
//! χ₁..χ₄ and carry no discord. On Bell-diagonal states the converse also
//! holds, so `W > 0` certifies nonclassical correlations there.

use std::fmt;

use serde::Serialize;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::operator::{bloch_operator, pauli, pauli_product, tensor, Mat4};
use crate::pauli::{dot, norm, PauliDecomposition};
use crate::sampling::{random_direction, seeded_rng};
use crate::scalar::Scalar;
use crate::states::CLASS_TOLERANCE;

/// Threshold below which `W` counts as zero in exact arithmetic.
pub const ZERO_THRESHOLD: f64 = 1e-9;

/// Direction pairs drawn in randomized mode unless told otherwise.
pub const DEFAULT_TRIALS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectionPair<T> {
    z: [T; 3],
    w: [T; 3],
}

impl<T: Scalar> DirectionPair<T> {
    /// Both vectors must have unit norm to `1e-12`.
    pub fn new(z: [T; 3], w: [T; 3]) -> Result<Self> {
        for v in [&z, &w] {
            let n = norm(v);
            if !((n - T::one()).abs() <= T::tol(1e-12)) {
                return Err(Error::NotUnit(n.as_f64()));
            }
        }
        Ok(Self { z, w })
    }

    /// Rescales both vectors to unit length.
    pub fn normalized(z: [T; 3], w: [T; 3]) -> Result<Self> {
        let unit = |v: [T; 3]| -> Result<[T; 3]> {
            let n = norm(&v);
            if !(n > T::zero()) || !n.is_finite() {
                return Err(Error::NotUnit(n.as_f64()));
            }
            Ok(v.map(|c| c / n))
        };
        Ok(Self {
            z: unit(z)?,
            w: unit(w)?,
        })
    }

    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R) -> Self {
        Self {
            z: random_direction(rng),
            w: random_direction(rng),
        }
    }

    pub fn z(&self) -> [T; 3] {
        self.z
    }

    pub fn w(&self) -> [T; 3] {
        self.w
    }
}

/// The `n_trials` direction pairs drawn for `seed`.
pub fn direction_pairs<T: Scalar>(n_trials: usize, seed: u64) -> Vec<DirectionPair<T>> {
    let mut rng = seeded_rng(seed, 0);
    (0..n_trials)
        .map(|_| DirectionPair::random(&mut rng))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
#[derive(Default)]
pub enum WitnessMode {
    /// `⟨Ô₄⟩` replaced by its supremum over directions, `‖x⃗‖ + ‖y⃗‖`.
    #[default]
    Deterministic,
    /// `n_trials` seeded random direction pairs; the largest `W` is reported.
    Randomized { n_trials: usize, seed: u64 },
}

impl WitnessMode {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Deterministic => "deterministic",
            Self::Randomized { .. } => "randomized",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    ClassicalCertified,
    Inconclusive,
    /// Only issued for Bell-diagonal inputs.
    NonclassicalCertified,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::ClassicalCertified => "ClassicalCertified",
            Self::Inconclusive => "Inconclusive",
            Self::NonclassicalCertified => "NonclassicalCertified",
        };
        f.write_str(s)
    }
}

/// The classical forms `χ₁..χ₃ = ¼(𝐈 + cᵢσᵢ⊗σᵢ)` and
/// `χ₄ = ¼(𝐈 + x⃗·σ⃗⊗𝐈 + 𝐈⊗y⃗·σ⃗)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassicalForm {
    Chi1,
    Chi2,
    Chi3,
    Chi4,
}

impl ClassicalForm {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Chi1 => "chi1",
            Self::Chi2 => "chi2",
            Self::Chi3 => "chi3",
            Self::Chi4 => "chi4",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessReport<T> {
    /// `⟨Ô₁⟩..⟨Ô₄⟩`.
    pub expectations: [T; 4],
    pub value: T,
    pub mode: WitnessMode,
    pub verdict: Verdict,
    pub matched_form: Option<ClassicalForm>,
    /// Threshold under which `value` counted as zero.
    pub threshold: T,
    /// Directions behind `expectations[3]` (randomized mode only).
    pub directions: Option<DirectionPair<T>>,
}

/// Flat serialisable view of a [`WitnessReport`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessRecord {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub e4: f64,
    #[serde(rename = "W")]
    pub w: f64,
    pub mode: &'static str,
    pub n_trials: Option<usize>,
    pub seed: Option<u64>,
    pub verdict: String,
    pub matched_form: Option<&'static str>,
}

impl<T: Scalar> WitnessReport<T> {
    pub fn record(&self) -> WitnessRecord {
        let (n_trials, seed) = match self.mode {
            WitnessMode::Deterministic => (None, None),
            WitnessMode::Randomized { n_trials, seed } => (Some(n_trials), Some(seed)),
        };
        let e = self.expectations.map(|v| v.as_f64());
        WitnessRecord {
            e1: e[0],
            e2: e[1],
            e3: e[2],
            e4: e[3],
            w: self.value.as_f64(),
            mode: self.mode.name(),
            n_trials,
            seed,
            verdict: self.verdict.to_string(),
            matched_form: self.matched_form.map(|f| f.name()),
        }
    }
}

/// `[Ô₁, Ô₂, Ô₃, Ô₄]` as explicit operators.
pub fn observables<T: Scalar>(d: &DirectionPair<T>) -> [Mat4<T>; 4] {
    let id = pauli::<T>(0).expect("identity");
    [
        pauli_product(1, 1),
        pauli_product(2, 2),
        pauli_product(3, 3),
        tensor(&bloch_operator(&d.z), &id) + tensor(&id, &bloch_operator(&d.w)),
    ]
}

/// `⟨Ôᵢ⟩ = cᵢ` for i = 1, 2, 3 and `⟨Ô₄⟩ = z⃗·x⃗ + w⃗·y⃗`.
pub fn observable_expectations<T: Scalar>(rho: &DensityMatrix<T>, d: &DirectionPair<T>) -> [T; 4] {
    expectations_from(&PauliDecomposition::of(rho), d)
}

fn expectations_from<T: Scalar>(dec: &PauliDecomposition<T>, d: &DirectionPair<T>) -> [T; 4] {
    let [c1, c2, c3] = dec.correlation_diagonal();
    [
        c1,
        c2,
        c3,
        dot(&d.z, &dec.bloch_a) + dot(&d.w, &dec.bloch_b),
    ]
}

/// `Σ_{i<j} |eᵢ eⱼ|`.
pub fn witness_from_expectations<T: Scalar>(e: &[T; 4]) -> T {
    let mut total = T::zero();
    for i in 0..4 {
        for j in (i + 1)..4 {
            total = total + (e[i] * e[j]).abs();
        }
    }
    total
}

/// Which classical form the expectations fit, when `W` is below `tol`.
pub fn matched_form<T: Scalar>(e: &[T; 4], value: T, tol: T) -> Option<ClassicalForm> {
    if value > tol {
        return None;
    }
    let (idx, largest) =
        e.iter()
            .map(|v| v.abs())
            .enumerate()
            .fold(
                (3, T::zero()),
                |best, (i, v)| if v > best.1 { (i, v) } else { best },
            );
    if largest <= T::tol(ZERO_THRESHOLD) {
        return Some(ClassicalForm::Chi4);
    }
    Some(
        [
            ClassicalForm::Chi1,
            ClassicalForm::Chi2,
            ClassicalForm::Chi3,
            ClassicalForm::Chi4,
        ][idx],
    )
}

pub(crate) fn verdict_for<T: Scalar>(value: T, tol: T, bell_diagonal: bool) -> Verdict {
    if value <= tol {
        Verdict::ClassicalCertified
    } else if bell_diagonal {
        Verdict::NonclassicalCertified
    } else {
        Verdict::Inconclusive
    }
}

/// Decomposition of `rho`, or `OutOfClass` when its correlation matrix is not
/// diagonal.
pub fn class_decomposition<T: Scalar>(rho: &DensityMatrix<T>) -> Result<PauliDecomposition<T>> {
    let dec = PauliDecomposition::of(rho);
    let off = dec.max_off_diagonal();
    if off > T::tol(CLASS_TOLERANCE) {
        return Err(Error::OutOfClass {
            off_diagonal: off.as_f64(),
        });
    }
    Ok(dec)
}

pub(crate) fn is_bell_diagonal<T: Scalar>(dec: &PauliDecomposition<T>) -> bool {
    dec.has_vanishing_marginals(T::tol(CLASS_TOLERANCE))
}

/// Witness with the default zero threshold.
pub fn witness_value<T: Scalar>(
    rho: &DensityMatrix<T>,
    mode: WitnessMode,
) -> Result<WitnessReport<T>> {
    witness_with_tolerance(rho, mode, T::tol(ZERO_THRESHOLD))
}

pub fn witness_with_tolerance<T: Scalar>(
    rho: &DensityMatrix<T>,
    mode: WitnessMode,
    tol: T,
) -> Result<WitnessReport<T>> {
    let dec = class_decomposition(rho)?;
    let (expectations, directions) = match mode {
        WitnessMode::Deterministic => {
            let [c1, c2, c3] = dec.correlation_diagonal();
            let sup = norm(&dec.bloch_a) + norm(&dec.bloch_b);
            ([c1, c2, c3, sup], None)
        }
        WitnessMode::Randomized { n_trials, seed } => {
            if n_trials == 0 {
                return Err(Error::InvalidArgument(
                    "randomized mode needs n_trials >= 1".into(),
                ));
            }
            let mut best: Option<([T; 4], DirectionPair<T>)> = None;
            for pair in direction_pairs(n_trials, seed) {
                let e = expectations_from(&dec, &pair);
                let better = match &best {
                    None => true,
                    Some((b, _)) => witness_from_expectations(&e) > witness_from_expectations(b),
                };
                if better {
                    best = Some((e, pair));
                }
            }
            let (e, pair) = best.expect("at least one trial");
            (e, Some(pair))
        }
    };
    let value = witness_from_expectations(&expectations);
    Ok(WitnessReport {
        expectations,
        value,
        mode,
        verdict: verdict_for(value, tol, is_bell_diagonal(&dec)),
        matched_form: matched_form(&expectations, value, tol),
        threshold: tol,
        directions,
    })
}

/// Deterministic-mode verdict at threshold `tol`.
pub fn classify<T: Scalar>(rho: &DensityMatrix<T>, tol: T) -> Result<Verdict> {
    Ok(witness_with_tolerance(rho, WitnessMode::Deterministic, tol)?.verdict)
}
