use proptest::prelude::*;
use qkrep_core::bounds::proximity::{
    delta_of_epsilon, gamma_m_construct, pbit_proximity, twisted_pbit_approx, PROXIMITY_HYPOTHESIS,
};
use qkrep_core::bounds::{
    ed_ec_bound, ef_hiding_bound, en_shield_from_x, en_shield_lower, gap_report, single_copy_bound,
    swap_pbit_bound, Direction,
};
use qkrep_core::measures::trace_distance;
use qkrep_core::opcore::{matrix_trace_norm, partial_trace, Operator};
use qkrep_core::states::{
    fourier_x, key_block, ppt_pbit_mixture, private_bit, swap_x, HidingParams,
};

const CAP: usize = 4096;

fn h2(p: f64) -> f64 {
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

#[test]
fn gap_at_four_by_hand() {
    let (lower, upper) = gap_report(4).unwrap();
    let p = 1.0 / 3.0;
    assert!((lower.value - (1.0 - 2.0 * h2(p))).abs() < 1e-12);
    assert!((upper.value - (2.0 * p * 3.0 + -p * p.log2())).abs() < 1e-12);
    assert_eq!(lower.direction, Direction::Lower);
    assert_eq!(upper.direction, Direction::Upper);
}

#[test]
fn gap_shape_on_doubling_grid() {
    let grid: Vec<u64> = (2..=20).map(|e| 1u64 << e).collect();
    let reports: Vec<_> = grid.iter().map(|&d| gap_report(d).unwrap()).collect();
    for w in reports.windows(2) {
        assert!(w[1].0.value > w[0].0.value, "lower not increasing");
    }
    // the upper bound peaks near d = 8 and decreases from there on
    assert!(reports[1].1.value > reports[0].1.value);
    for w in reports[1..].windows(2) {
        assert!(w[1].1.value < w[0].1.value, "upper not decreasing");
    }
}

#[test]
fn gap_opens_for_large_shields() {
    let (l2, u2) = gap_report(100).unwrap();
    let (l4, u4) = gap_report(10_000).unwrap();
    let (l6, u6) = gap_report(1_000_000).unwrap();
    assert!(l2.value < l4.value && l4.value < l6.value);
    assert!(u2.value > u4.value && u4.value > u6.value);
    assert!(u4.value < l4.value);
    assert!(l6.value > 0.95 && u6.value < 0.06);
}

#[test]
fn single_copy_matches_swap_formula() {
    for d in [7u64, 11, 50] {
        let df = d as f64;
        let eps = 1.0 / df;
        let mu = 1.0 + swap_x(d as usize).unwrap().x_gamma_norm();
        let a = single_copy_bound(eps, mu, d).unwrap();
        let b = swap_pbit_bound(d).unwrap();
        assert!((a.value - b.value).abs() < 1e-12, "d = {d}");
        assert!((a.inputs["epsilon_prime"] - (2.0 * df + 1.0) / (df * df)).abs() < 1e-15);
        assert!(a.applicable && b.applicable);
    }
}

#[test]
fn swap_bound_decays_slowly() {
    let vals: Vec<f64> = [7u64, 50, 200, 1000]
        .iter()
        .map(|&d| swap_pbit_bound(d).unwrap().value)
        .collect();
    assert!(vals.windows(2).all(|w| w[1] < w[0]));
    assert!(vals[2] < 0.5);
    assert!(!swap_pbit_bound(6).unwrap().applicable);
}

#[test]
fn single_copy_edges() {
    assert_eq!(single_copy_bound(0.0, 1.0, 8).unwrap().value, 0.0);
    assert!(!single_copy_bound(0.17, 1.0, 8).unwrap().applicable);
}

#[test]
fn ed_ec_examples() {
    assert_eq!(ed_ec_bound(0.0, 1.0).unwrap().value, 0.5);
    assert_eq!(ed_ec_bound(1.0, 1.0).unwrap().value, 1.0);
    assert!(ed_ec_bound(-0.1, 1.0).is_err());
}

#[test]
fn ef_bound_values() {
    assert!((ef_hiding_bound(2).unwrap().value - 4.2).abs() < 1e-12);
    assert!((ef_hiding_bound(20).unwrap().value - 1.0).abs() < 0.01);
    let vals: Vec<f64> = (4..=30)
        .map(|m| ef_hiding_bound(m).unwrap().value)
        .collect();
    assert!(vals.windows(2).all(|w| w[1] < w[0]));
    assert!(ef_hiding_bound(1).is_err());
}

#[test]
fn shield_lower_bounds_hold() {
    for d in [2usize, 3, 4] {
        for x in [fourier_x(d).unwrap(), swap_x(d).unwrap()] {
            let from_state = en_shield_lower(&private_bit(&x).unwrap()).unwrap();
            let from_x = en_shield_from_x(&x).unwrap();
            assert!((from_state.value - from_x.value).abs() < 1e-10);
            assert!(from_state.value <= d as f64 + 1e-10);
        }
        let swap = en_shield_from_x(&swap_x(d).unwrap()).unwrap();
        assert!((swap.value - d as f64).abs() < 1e-10);
    }
    assert!((en_shield_from_x(&fourier_x(16).unwrap()).unwrap().value - 4.0).abs() < 1e-10);
}

#[test]
fn proximity_sweep() {
    let rows: Vec<_> = (2..=14).map(|m| pbit_proximity(m).unwrap()).collect();
    for w in rows.windows(2) {
        assert!(w[1].epsilon < w[0].epsilon && w[1].delta < w[0].delta);
    }
    for r in &rows {
        assert!((r.epsilon - 4.0 / 3.0 * r.epsilon_raw).abs() < 1e-15);
        assert_eq!(
            r.hypothesis,
            r.epsilon > 0.0 && r.epsilon < PROXIMITY_HYPOTHESIS
        );
    }
}

#[test]
fn gamma_m_smallest_member() {
    let params = HidingParams::new(1.0 / 3.0, 2, 1, 1).unwrap();
    let gamma = gamma_m_construct(&params, CAP).unwrap();
    gamma.validate_state().unwrap();
    let key = partial_trace(&gamma, &["A'", "B'"]).unwrap();
    for (i, want) in [0.5, 0.0, 0.0, 0.5].into_iter().enumerate() {
        assert!((key.matrix()[(i, i)].re - want).abs() < 1e-10);
    }
    let rho = qkrep_core::states::hiding_dense(&params, CAP).unwrap();
    let dist = trace_distance(&gamma, &rho).unwrap();
    assert!(dist.is_finite() && dist > 0.0 && dist <= 2.0);
}

#[test]
fn noisy_private_bit_is_close_to_twisted_approximation() {
    let gamma = private_bit(&fourier_x(2).unwrap()).unwrap();
    let flat = Operator::maximally_mixed(gamma.layout().clone());
    for q in [1e-6, 2e-6, 1e-5] {
        let rho = &(&gamma * (1.0 - q)) + &(&flat * q);
        let eps = 0.5 - matrix_trace_norm(&key_block(&rho, (0, 0), (1, 1)).unwrap());
        assert!(eps > 0.0 && eps < PROXIMITY_HYPOTHESIS);
        let sigma = twisted_pbit_approx(&rho).unwrap();
        sigma.validate_state().unwrap();
        let dist = trace_distance(&sigma, &rho).unwrap();
        assert!(dist <= delta_of_epsilon(eps).unwrap(), "q = {q}: {dist}");
    }
}

#[test]
fn twist_leaves_a_private_bit_unchanged() {
    for d in 2..=3usize {
        let gamma = private_bit(&fourier_x(d).unwrap()).unwrap();
        let back = twisted_pbit_approx(&gamma).unwrap();
        assert!(trace_distance(&gamma, &back).unwrap() < 1e-10);
    }
}

#[test]
fn ppt_mixture_shield_bound_uses_key_coherence() {
    // the mixture is not a private bit, but its coherence is still X-form
    let rho = ppt_pbit_mixture(4).unwrap();
    let r = en_shield_lower(&rho).unwrap();
    assert!(r.value.is_finite() && r.value > 0.0);
}

proptest! {
    #[test]
    fn bound_formulas_are_finite(d in 2u64..2_000_000, m in 2u32..200, eps in 0.0f64..0.16, mu in 0.0f64..1.0) {
        let (l, u) = gap_report(d).unwrap();
        prop_assert!(l.value.is_finite() && u.value.is_finite());
        let s = single_copy_bound(eps, mu, d).unwrap();
        prop_assert!(s.applicable && s.value.is_finite());
        if d >= 7 {
            prop_assert!(swap_pbit_bound(d).unwrap().value.is_finite());
        }
        prop_assert!(ef_hiding_bound(m).unwrap().value.is_finite());
        prop_assert!(pbit_proximity(m).unwrap().delta.is_finite());
    }
}
