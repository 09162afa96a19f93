//! Seed-fixed Monte Carlo runs against the closed-form error algebra.

use estgame_core::game::{average_error, leader_cost};
use estgame_core::oracle::enumerate_conditional_error;
use estgame_core::simulator::{empirical_cost, run, Player, SimConfig};
use estgame_core::{GameParams, PolicyPair};

const T: u64 = 1_000_000;

fn sim(params: GameParams, p1: f64, p2: f64, seed: u64) -> estgame_core::SimResult {
    run(&SimConfig::new(params, PolicyPair::new(p1, p2).unwrap(), T, seed)).unwrap()
}

#[test]
fn symmetric_half_sampling_error_is_one_sixth() {
    let params = GameParams::new(0.25, 0.25, 0.0, 1.0, 1.0).unwrap();
    let r = sim(params, 0.5, 0.5, 7);
    for e in r.mean_sq_error {
        assert!((e - 1.0 / 6.0).abs() <= 0.02 / 6.0, "{e}");
    }
}

#[test]
fn both_players_errors_match_closed_form() {
    let params = GameParams::new(0.15, 0.35, 0.3, 1.0, 1.0).unwrap();
    for &(p1, p2) in &[(0.2, 0.1), (0.05, 0.4)] {
        let r = sim(params, p1, p2, 21);
        let policy = PolicyPair::new(p1, p2).unwrap();
        let leader = average_error(params.alpha2, policy).to_f64();
        let follower = average_error(params.alpha1, policy).to_f64();
        assert!((r.mean_sq_error[0] / leader - 1.0).abs() < 0.02);
        assert!((r.mean_sq_error[1] / follower - 1.0).abs() < 0.02);
    }
}

#[test]
fn geometric_age_law() {
    let params = GameParams::new(0.2, 0.2, 0.0, 1.0, 1.0).unwrap();
    let r = sim(params, 0.3, 0.2, 5);
    assert!((r.histogram_mass() - 1.0).abs() < 1e-12);
    assert!(r.age_tv_distance(0.44) <= 0.01);
}

#[test]
fn conditional_error_grows_linearly_with_age() {
    for &(alpha2, age) in &[(0.25, 4usize), (0.1, 10usize)] {
        let params = GameParams::new(0.2, alpha2, 0.0, 1.0, 1.0).unwrap();
        let r = sim(params, 0.05, 0.05, 17);
        let expected = enumerate_conditional_error(alpha2, age).unwrap();
        let got = r.conditional_error(age).unwrap();
        assert!((got / expected - 1.0).abs() < 0.05, "a2={alpha2} age={age}: {got}");
        let slope = r.conditional_error_slope(Player::Leader, 1..=20).unwrap();
        assert!((slope / (2.0 * alpha2) - 1.0).abs() < 0.03, "slope {slope}");
    }
}

#[test]
fn empirical_leader_cost_matches_closed_form() {
    // alpha = 0 gives K1 = 2 a2 and K2 = 2 a1 with unit costs.
    let params = GameParams::new(0.3125, 0.25, 0.5, 0.25, 0.25).unwrap();
    let consts = params.derive_constants();
    assert!((consts.k1 - 0.75).abs() < 1e-12 && (consts.k2 - 1.5).abs() < 1e-12);
    let r = sim(params, 0.2, 0.6, 99);
    let cost = empirical_cost(&r, &params);
    let policy = PolicyPair::new(0.2, 0.6).unwrap();
    let closed = leader_cost(&consts, policy).to_f64();
    assert!((cost.leader / closed - 1.0).abs() < 0.02, "{} vs {closed}", cost.leader);
}

#[test]
fn k_constants_from_reference_panel_are_reachable_by_walks() {
    // (K1, K2) = (1, 1.25) with alpha = 0: a2 = c1 / 2, a1 = 1.25 c2 / 2.
    let params = GameParams::new(0.3125, 0.2, 0.0, 0.4, 0.5).unwrap();
    let consts = params.derive_constants();
    assert!((consts.k1 - 1.0).abs() < 1e-12 && (consts.k2 - 1.25).abs() < 1e-12);
    let r = sim(params, 0.2, 0.6, 3);
    let cost = empirical_cost(&r, &params);
    let closed = leader_cost(&consts, PolicyPair::new(0.2, 0.6).unwrap()).to_f64();
    assert!((cost.leader / closed - 1.0).abs() < 0.02, "{} vs {closed}", cost.leader);
}
