mod common;

use common::random_state;
use proptest::prelude::*;
use qkrep_core::measures::trace_distance;
use qkrep_core::opcore::linalg::{c, CVector};
use qkrep_core::opcore::{haar_unitary, partial_trace};
use qkrep_core::repsim::{
    bell_swap, erasure_demo, erasure_demo_gauge, erasure_demo_state, erasure_expected_state,
    haar_average_check, teleport_through, ShieldChannel,
};
use qkrep_core::states::{
    epr, flower_correlated, maximally_correlated, mc_structure_defect, FlowerParams, FlowerSide,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CAP: usize = 4096;

#[test]
fn erasure_gauge_invariance() {
    for d in [2usize, 4] {
        let rate = erasure_demo(d, CAP).unwrap().value;
        let sigma = erasure_demo_state(d, ShieldChannel::Erasure, CAP).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
        let u = haar_unitary(sigma.dim(), &mut rng).unwrap();
        let gauged = erasure_demo_gauge(d, &u, CAP).unwrap();
        assert!((rate - gauged).abs() < 1e-9, "d = {d}: {rate} vs {gauged}");
    }
}

#[test]
fn erasure_state_matches_closed_form() {
    for d in [2usize, 3] {
        let got = erasure_demo_state(d, ShieldChannel::Erasure, CAP).unwrap();
        let want = erasure_expected_state(d).unwrap();
        assert!(got.max_abs_diff(&want).unwrap() < 1e-12);
    }
}

#[test]
fn epr_link_beats_erasure() {
    let erased = erasure_demo(2, CAP).unwrap().value;
    let perfect = qkrep_core::repsim::erasure_demo_with(2, ShieldChannel::Epr, CAP)
        .unwrap()
        .value;
    assert!((perfect - 1.0).abs() < 1e-9);
    assert!(erased > 0.0 && erased < perfect);
}

#[test]
fn haar_deviation_shrinks_with_n() {
    let medians: Vec<f64> = [2usize, 8, 32]
        .iter()
        .map(|&n| {
            haar_average_check(2, n, 1, 0, 20, 99)
                .unwrap()
                .median_deviation
        })
        .collect();
    assert!(medians.windows(2).all(|w| w[1] < w[0]), "{medians:?}");
}

#[test]
fn haar_check_is_reproducible() {
    let a = haar_average_check(3, 4, 0, 1, 5, 7).unwrap();
    let b = haar_average_check(3, 4, 0, 1, 5, 7).unwrap();
    assert_eq!(a, b);
    assert!(a.min_eigenvalues.iter().all(|&x| x >= -1e-12));
}

#[test]
fn swapping_flower_states_keeps_correlations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in 2..=3usize {
        let alice = flower_correlated(
            &FlowerParams::haar(d, 2, &mut rng).unwrap(),
            FlowerSide::Alice,
        )
        .unwrap();
        let bob = flower_correlated(
            &FlowerParams::haar(d, 2, &mut rng).unwrap(),
            FlowerSide::Bob,
        )
        .unwrap();
        let ens = bell_swap(&alice, "CA", &bob, "CB", "B").unwrap();
        assert!((ens.probs().total() - 1.0).abs() < 1e-12);
        for (s, &p) in ens.states().iter().zip(ens.probs().entries()) {
            if p > 1e-12 {
                s.validate_state().unwrap();
                assert!(mc_structure_defect(s).unwrap() < 1e-10);
            }
        }
    }
}

#[test]
fn swapping_epr_pairs_gives_epr() {
    for d in 2..=3usize {
        let left = epr(d).unwrap().relabel("B", "C1").unwrap();
        let right = epr(d).unwrap().relabel("A", "C2").unwrap();
        let ens = bell_swap(&left, "C1", &right, "C2", "B").unwrap();
        let target = epr(d).unwrap();
        for (s, &p) in ens.states().iter().zip(ens.probs().entries()) {
            assert!((p - 1.0 / (d * d) as f64).abs() < 1e-12);
            assert!(trace_distance(s, &target).unwrap() < 1e-10);
        }
    }
}

#[test]
fn swapping_maximally_correlated_states() {
    let s = 0.5_f64.sqrt();
    let v = vec![
        CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]),
        CVector::from_vec(vec![c(s, 0.0), c(0.0, s)]),
    ];
    let left = maximally_correlated(&v)
        .unwrap()
        .relabel("B", "C1")
        .unwrap();
    let right = maximally_correlated(&v)
        .unwrap()
        .relabel("A", "C2")
        .unwrap();
    let ens = bell_swap(&left, "C1", &right, "C2", "B").unwrap();
    for (s, &p) in ens.states().iter().zip(ens.probs().entries()) {
        if p > 1e-12 {
            assert!(mc_structure_defect(s).unwrap() < 1e-10);
        }
    }
}

#[test]
fn teleporting_half_of_a_state_preserves_it() {
    let rho = random_state(&[2, 3], &["X", "Y"], 17);
    let link = epr(3)
        .unwrap()
        .relabel("A", "C")
        .unwrap()
        .relabel("B", "Z")
        .unwrap();
    let out = teleport_through(&link, &rho, "Y").unwrap();
    let back = out.relabel("Z", "Y").unwrap();
    assert!(back.max_abs_diff(&rho).unwrap() < 1e-12);
    let marg = partial_trace(&out, &["Z"]).unwrap();
    assert!(
        marg.max_abs_diff(&partial_trace(&rho, &["Y"]).unwrap())
            .unwrap()
            < 1e-12
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn swap_outcomes_sum_to_one(d in 2usize..=3, s1 in any::<u64>(), s2 in any::<u64>()) {
        let left = random_state(&[2, d], &["A", "C1"], s1);
        let right = random_state(&[d, d], &["C2", "B"], s2);
        let ens = bell_swap(&left, "C1", &right, "C2", "B").unwrap();
        prop_assert!((ens.probs().total() - 1.0).abs() < 1e-12);
        prop_assert!(ens.average().unwrap().validate_state().is_ok());
        // Bob's side alone is untouched by Charlie's measurement on average
        let avg = ens.average().unwrap();
        let alice = partial_trace(&avg, &["B"]).unwrap();
        prop_assert!(alice.max_abs_diff(&partial_trace(&left, &["C1"]).unwrap()).unwrap() < 1e-12);
    }
}
