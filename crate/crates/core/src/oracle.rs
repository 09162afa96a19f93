//! Brute-force verifiers that share no code path with the analytic solver
//! beyond the closed-form cost functions themselves.

use rayon::prelude::*;

use crate::equilibrium::{compare_choices, Candidate, Equilibrium};
use crate::error::{GameError, Result};
use crate::game::{follower_cost, leader_cost, GameConstants, PolicyPair};
use crate::value::ExtendedValue;

pub const SE_GRID_STEP: f64 = 1e-3;
pub const BR_GRID_STEP: f64 = 1e-4;
pub const MAX_ENUMERATED_AGE: usize = 40;

fn grid(step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1e-2) {
        return Err(GameError::GridStep(step));
    }
    let n = (1.0 / step).round() as usize;
    Ok((0..=n).map(|i| i as f64 / n as f64).collect())
}

fn grid_br_on(constants: &GameConstants, p1: f64, points: &[f64]) -> f64 {
    let mut best = (ExtendedValue::PosInfinity, f64::NAN);
    for &p2 in points {
        let cost = follower_cost(constants, PolicyPair { p1, p2 });
        // Strict comparison keeps the smallest p2 on ties.
        if cost < best.0 || best.1.is_nan() {
            best = (cost, p2);
        }
    }
    best.1
}

/// Grid point in `[0, 1]` minimizing the follower's cost at fixed `p1`.
pub fn grid_br(constants: &GameConstants, p1: f64, step: f64) -> Result<f64> {
    Ok(grid_br_on(constants, p1, &grid(step)?))
}

/// Exhaustive Stackelberg search over a square grid. The candidate list of
/// the returned [`Equilibrium`] holds only the winning grid point.
pub fn grid_se(constants: &GameConstants, step: f64) -> Result<Equilibrium> {
    let points = grid(step)?;
    let best = points
        .par_iter()
        .map(|&p1| {
            let policy = PolicyPair {
                p1,
                p2: grid_br_on(constants, p1, &points),
            };
            (leader_cost(constants, policy), policy)
        })
        .min_by(|a, b| compare_choices(*a, *b))
        .expect("grid is never empty");
    let (leader_value, policy) = best;
    Ok(Equilibrium {
        policy,
        leader_value,
        follower_value: follower_cost(constants, policy),
        regime: crate::equilibrium::Regime::classify(constants),
        candidates: vec![Candidate {
            policy,
            leader_value,
        }],
    })
}

/// Moments of the step counts over `age` steps, by full enumeration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepMoments {
    /// `E[M1]`, the expected number of up-steps.
    pub up: f64,
    /// `E[M1^2]`.
    pub up_sq: f64,
    /// `E[M1 * M-1]`.
    pub up_down: f64,
    /// `E[(M1 - M-1)^2]`, the squared displacement.
    pub displacement_sq: f64,
    /// Total probability mass enumerated.
    pub mass: f64,
}

fn binomial(n: usize, k: usize) -> f64 {
    // Exact in f64 for n <= 40: every partial product is an integer < 2^53.
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

fn sorted_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    terms.into_iter().sum()
}

/// Enumerates every composition `m1 + m0 + m-1 = age` of the multinomial
/// step counts.
pub fn enumerate_moments(step_prob: f64, age: usize) -> Result<StepMoments> {
    crate::game::check_step_probability(step_prob)?;
    if !(1..=MAX_ENUMERATED_AGE).contains(&age) {
        return Err(GameError::AgeOutOfRange {
            age,
            min: 1,
            max: MAX_ENUMERATED_AGE,
        });
    }
    let stay = 1.0 - 2.0 * step_prob;
    let mut mass = Vec::new();
    let mut up = Vec::new();
    let mut up_sq = Vec::new();
    let mut up_down = Vec::new();
    let mut disp = Vec::new();
    for m_up in 0..=age {
        for m_down in 0..=(age - m_up) {
            let m_stay = age - m_up - m_down;
            let coef = binomial(age, m_up) * binomial(age - m_up, m_down);
            let p = coef
                * step_prob.powi(m_up as i32)
                * step_prob.powi(m_down as i32)
                * stay.powi(m_stay as i32);
            let (u, d) = (m_up as f64, m_down as f64);
            mass.push(p);
            up.push(u * p);
            up_sq.push(u * u * p);
            up_down.push(u * d * p);
            disp.push((u - d) * (u - d) * p);
        }
    }
    Ok(StepMoments {
        up: sorted_sum(up),
        up_sq: sorted_sum(up_sq),
        up_down: sorted_sum(up_down),
        displacement_sq: sorted_sum(disp),
        mass: sorted_sum(mass),
    })
}

/// Exact `E[x_e^2 | age]` for a lazy walk, by enumeration.
pub fn enumerate_conditional_error(step_prob: f64, age: usize) -> Result<f64> {
    Ok(enumerate_moments(step_prob, age)?.displacement_sq)
}
