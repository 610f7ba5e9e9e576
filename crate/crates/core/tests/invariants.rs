mod common;

use proptest::prelude::*;

use qcorr::eigen::von_neumann_entropy;
use qcorr::entanglement::{entanglement_report, partial_transpose};
use qcorr::measures::{discord, mutual_information};
use qcorr::operator::{partial_trace, tensor};
use qcorr::sampling::{
    random_direction, random_ginibre_state, random_in_class_state, random_local_unitary, seeded_rng,
};
use qcorr::states::{make_product, make_werner};
use qcorr::witness::witness_value;
use qcorr::{Decomposition, State, StateF32, StateFile, Subsystem, WitnessMode};
use rand::Rng;

fn ginibre(seed: u64) -> State {
    random_ginibre_state(&mut seeded_rng(seed, 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_round_trip(seed in any::<u64>()) {
        let rho = ginibre(seed);
        let d = Decomposition::of(&rho);
        prop_assert!(d.compose().max_abs_diff(rho.matrix()) <= 1e-12);
        let oracle = common::bloch(&rho);
        for i in 0..3 {
            prop_assert!((d.bloch_a[i] - oracle.x[i]).abs() <= 1e-12);
            prop_assert!((d.bloch_b[i] - oracle.y[i]).abs() <= 1e-12);
            for j in 0..3 {
                prop_assert!((d.correlations[i][j] - oracle.t[i][j]).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn entropy_is_additive_on_products(seed in any::<u64>(), ra in 0.0..=1.0f64, rb in 0.0..=1.0f64) {
        let mut rng = seeded_rng(seed, 0);
        let a: [f64; 3] = random_direction(&mut rng).map(|v: f64| v * ra);
        let b: [f64; 3] = random_direction(&mut rng).map(|v: f64| v * rb);
        let rho = make_product(a, b).unwrap();
        let joint = von_neumann_entropy(rho.matrix()).unwrap();
        let parts = common::qubit_entropy(&a) + common::qubit_entropy(&b);
        prop_assert!((joint - parts).abs() <= 1e-9);
        prop_assert!(mutual_information(&rho).abs() <= 1e-9);
        prop_assert!(discord(&rho).unwrap().discord <= 1e-8);
    }

    #[test]
    fn discord_is_local_unitary_invariant(seed in any::<u64>()) {
        let rho = ginibre(seed);
        let mut rng = seeded_rng(seed, 7);
        let u = tensor(&random_local_unitary(&mut rng), &random_local_unitary(&mut rng));
        let rotated = rho.evolve(&u).unwrap();
        let d0 = discord(&rho).unwrap().discord;
        let d1 = discord(&rotated).unwrap().discord;
        prop_assert!((d0 - d1).abs() <= 1e-5, "{d0} vs {d1}");
    }

    #[test]
    fn discord_is_bounded(seed in any::<u64>()) {
        let rho = ginibre(seed);
        let r = discord(&rho).unwrap();
        let s_b = von_neumann_entropy(&partial_trace(&rho, Subsystem::B)).unwrap();
        prop_assert!(r.discord >= 0.0);
        prop_assert!(r.discord <= r.mutual_information + 1e-12);
        prop_assert!(r.discord <= s_b + 1e-8);
        prop_assert!(r.classical_correlation >= -1e-12);
    }

    #[test]
    fn bell_violation_implies_npt(seed in any::<u64>()) {
        let rho = ginibre(seed);
        let r = entanglement_report(&rho);
        prop_assert!(r.negativity >= 0.0);
        prop_assert!((partial_transpose(&rho).trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(r.chsh_max <= 2.0 * std::f64::consts::SQRT_2 + 1e-12);
        if r.chsh_violated {
            prop_assert!(!r.ppt);
        }
    }

    #[test]
    fn witness_matches_in_f32(seed in any::<u64>()) {
        let rho: State = random_in_class_state(&mut seeded_rng(seed, 0));
        let low: StateF32 = StateFile::from_state(&rho).to_state().unwrap();
        let w64 = witness_value(&rho, WitnessMode::Deterministic).unwrap().value;
        let w32 = witness_value(&low, WitnessMode::Deterministic).unwrap().value;
        prop_assert!((w64 - w32 as f64).abs() <= 1e-5);
    }

    #[test]
    fn randomized_witness_never_exceeds_deterministic(seed in any::<u64>(), trials in 1usize..20) {
        let rho: State = random_in_class_state(&mut seeded_rng(seed, 0));
        let det = witness_value(&rho, WitnessMode::Deterministic).unwrap().value;
        let ran = witness_value(&rho, WitnessMode::Randomized { n_trials: trials, seed }).unwrap().value;
        prop_assert!(ran <= det + 1e-12);
    }

    #[test]
    fn state_file_round_trip(seed in any::<u64>()) {
        let rho = ginibre(seed);
        let text = StateFile::from_state(&rho).to_json();
        let back: State = StateFile::parse(&text).unwrap().to_state().unwrap();
        prop_assert!(back.matrix().max_abs_diff(rho.matrix()) <= 1e-15);
    }
}

#[test]
fn werner_discord_increases_with_alpha() {
    let values: Vec<f64> = (0..=20)
        .map(|k| {
            discord(&make_werner(k as f64 / 20.0).unwrap())
                .unwrap()
                .discord
        })
        .collect();
    for pair in values.windows(2) {
        assert!(pair[1] > pair[0], "{values:?}");
    }
    assert!((values[20] - 1.0).abs() < 1e-9);
}

#[test]
fn sampled_witness_converges_with_shots() {
    use qcorr::nmr::{witness_via_protocol, DirectionSource, Shots};
    let rho = make_werner(0.6f64).unwrap();
    let source = DirectionSource::Random {
        n_trials: 1,
        seed: 3,
    };
    let mut errors = Vec::new();
    for shots in [1_000u64, 100_000] {
        let mut rng = seeded_rng(11, 0);
        let mut total = 0f64;
        for _ in 0..20 {
            let seed = rng.gen();
            let w = witness_via_protocol(&rho, Shots::Sampled(shots), source, seed).unwrap();
            total += (w.report.value - 1.08).abs();
        }
        errors.push(total / 20.0);
    }
    assert!(errors[1] < errors[0] / 3.0, "{errors:?}");
}
