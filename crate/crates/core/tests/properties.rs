use estgame_core::best_response::{follower_br, leader_cost_at_response, leader_reduced_cost};
use estgame_core::equilibrium::solve;
use estgame_core::game::{average_error, follower_cost, leader_cost};
use estgame_core::{ExtendedValue, GameConstants, GameParams, PolicyPair};
use proptest::prelude::*;

fn rel_close(a: ExtendedValue, b: ExtendedValue, tol: f64) -> bool {
    match (a.finite(), b.finite()) {
        (Some(x), Some(y)) => (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0),
        _ => a == b,
    }
}

#[test]
fn average_error_is_positive_and_decreasing_on_grid() {
    let n = 50;
    let at = |i: usize, j: usize| {
        let policy = PolicyPair::new(i as f64 / n as f64, j as f64 / n as f64).unwrap();
        average_error(0.3, policy)
    };
    for i in 0..=n {
        for j in 0..=n {
            if i == 0 && j == 0 {
                assert_eq!(at(0, 0), ExtendedValue::PosInfinity);
                continue;
            }
            let here = at(i, j);
            assert!(here >= ExtendedValue::ZERO);
            if i < n && j < n {
                assert!(at(i + 1, j) < here, "p1 step at ({i},{j})");
                assert!(at(i, j + 1) < here, "p2 step at ({i},{j})");
            }
        }
    }
}

#[test]
fn costs_depend_on_params_only_through_constants() {
    let a = GameParams::new(0.1, 0.3, 0.0, 1.0, 1.0).unwrap();
    let b = GameParams::new(1.0 / 3.0, 0.35 / 0.75, 0.5, 1.0, 1.0).unwrap();
    let (ka, kb) = (a.derive_constants(), b.derive_constants());
    assert!((ka.k1 - kb.k1).abs() < 1e-12 && (ka.k2 - kb.k2).abs() < 1e-12);
    for i in 0..=40 {
        for j in 0..=40 {
            let policy = PolicyPair::new(i as f64 / 40.0, j as f64 / 40.0).unwrap();
            assert!(rel_close(leader_cost(&ka, policy), leader_cost(&kb, policy), 1e-11));
            assert!(rel_close(follower_cost(&ka, policy), follower_cost(&kb, policy), 1e-11));
        }
    }
}

#[test]
fn alpha_space_and_k_space_give_the_same_equilibrium() {
    let from_params = solve(&GameParams::new(0.1, 0.3, 0.0, 1.0, 1.0).unwrap().derive_constants());
    let from_k = solve(&GameConstants::unit_costs(0.6, 0.2).unwrap());
    assert!((from_params.policy.p1 - from_k.policy.p1).abs() < 1e-12);
    assert!((from_params.policy.p2 - from_k.policy.p2).abs() < 1e-12);
    assert_eq!(from_params.regime, from_k.regime);
}

fn policy() -> impl Strategy<Value = PolicyPair> {
    (0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(p1, p2)| PolicyPair::new(p1, p2).unwrap())
}

proptest! {
    #[test]
    fn leader_cost_scales_with_c1(k1 in -3.0..3.0f64, k2 in -3.0..3.0f64,
                                  c1 in 0.01..10.0f64, lambda in 0.01..100.0f64,
                                  policy in policy()) {
        let base = GameConstants::new(k1, k2, c1, 1.0).unwrap();
        let scaled = GameConstants::new(k1, k2, lambda * c1, 1.0).unwrap();
        let expected = leader_cost(&base, policy) * lambda;
        prop_assert!(rel_close(leader_cost(&scaled, policy), expected, 1e-12));
    }

    #[test]
    fn follower_cost_is_leader_cost_with_roles_swapped(k1 in -3.0..3.0f64, k2 in -3.0..3.0f64,
                                                      c2 in 0.01..10.0f64, policy in policy()) {
        let consts = GameConstants::new(k1, k2, 0.7, c2).unwrap();
        let mirrored = GameConstants::new(k2, k1, c2, 0.7).unwrap();
        prop_assert_eq!(follower_cost(&consts, policy), leader_cost(&mirrored, policy.swapped()));
    }

    #[test]
    fn best_response_lies_in_unit_interval(k2 in -5.0..5.0f64, p1 in 0.0..=1.0f64) {
        let (p2, _) = follower_br(k2, p1);
        prop_assert!((0.0..=1.0).contains(&p2));
    }

    #[test]
    fn reduced_cost_is_leader_cost_at_response(k1 in -3.0..3.0f64, k2 in 0.001..3.0f64,
                                              c1 in 0.1..10.0f64, p1 in 0.0..=1.0f64) {
        let consts = GameConstants::new(k1, k2, c1, 1.0).unwrap();
        let reduced = leader_reduced_cost(&consts, p1).0;
        let composed = leader_cost_at_response(&consts, p1);
        prop_assert!(rel_close(reduced, composed, 1e-12), "{} vs {}", reduced, composed);
    }

    #[test]
    fn equilibrium_policy_ignores_cost_scale(k1 in -3.0..3.0f64, k2 in -3.0..3.0f64,
                                             lambda in 0.01..100.0f64, mu in 0.01..100.0f64) {
        let base = GameConstants::unit_costs(k1, k2).unwrap();
        let scaled = base.with_costs(lambda, mu).unwrap();
        prop_assert_eq!(solve(&base).policy, solve(&scaled).policy);
    }

    #[test]
    fn equilibrium_follower_plays_best_response(k1 in -3.0..3.0f64, k2 in -3.0..3.0f64) {
        let consts = GameConstants::unit_costs(k1, k2).unwrap();
        let eq = solve(&consts);
        prop_assert_eq!(eq.policy.p2, follower_br(k2, eq.policy.p1).0);
        prop_assert_eq!(eq.leader_value, leader_cost(&consts, eq.policy));
    }
}
