use estgame_core::equilibrium::solve;
use estgame_core::oracle::{grid_br, grid_se, BR_GRID_STEP, SE_GRID_STEP};
use estgame_core::best_response::follower_br;
use estgame_core::GameConstants;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn grid_best_response_tracks_analytic_response() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..30 {
        let k2 = rng.random_range(-3.0..3.0);
        let p1: f64 = rng.random_range(0.0..1.0);
        let consts = GameConstants::unit_costs(0.0, k2).unwrap();
        let grid = grid_br(&consts, p1, BR_GRID_STEP).unwrap();
        let (analytic, _) = follower_br(k2, p1);
        assert!((grid - analytic).abs() <= BR_GRID_STEP, "k2={k2} p1={p1}: {grid} vs {analytic}");
    }
}

#[test]
fn grid_equilibrium_matches_analytic_on_reference_panels() {
    for &(k1, k2) in &[(1.0, 1.25), (1.0, 0.1), (-0.5, 1.25), (-2.0, 1.25), (0.25, -0.5), (4.0, -0.1)] {
        let consts = GameConstants::unit_costs(k1, k2).unwrap();
        let analytic = solve(&consts);
        let grid = grid_se(&consts, SE_GRID_STEP).unwrap();
        let gap = analytic.leader_value.distance(grid.leader_value);
        assert!(gap <= 1e-2 * (1.0 + f64::abs(k1)), "k1={k1} k2={k2} gap={gap}");
        assert!((analytic.policy.p1 - grid.policy.p1).abs() <= 2e-3);
        assert!(analytic.leader_value <= grid.leader_value + 1e-12);
    }
}
