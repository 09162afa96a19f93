//! Domain types and the closed-form long-run cost algebra.
//!
//! Under stationary sampling with probabilities `(p1, p2)` the shared age of
//! information resets with probability `q = 1 - (1 - p1)(1 - p2)` each step,
//! its stationary law is geometric, and the mean squared error about a walk
//! with step probability `a` is `2a(1 - q) / q`. Costs are written in the
//! factored form `c1 * (K1 * (1 - q) / q + p1)` so that they depend on the
//! physical parameters only through [`GameConstants`].

use crate::error::{GameError, Result};
use crate::value::ExtendedValue;

/// Physical parameterization of the game.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameParams {
    /// Step probability of the leader's walk.
    pub alpha1: f64,
    /// Step probability of the follower's walk.
    pub alpha2: f64,
    /// Weight placed on the information revealed to the opponent.
    pub alpha: f64,
    /// Leader cost per sample.
    pub c1: f64,
    /// Follower cost per sample.
    pub c2: f64,
}

impl GameParams {
    pub fn new(alpha1: f64, alpha2: f64, alpha: f64, c1: f64, c2: f64) -> Result<Self> {
        check_step_probability(alpha1)?;
        check_step_probability(alpha2)?;
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(GameError::RevelationWeight(alpha));
        }
        check_cost(c1)?;
        check_cost(c2)?;
        Ok(GameParams {
            alpha1,
            alpha2,
            alpha,
            c1,
            c2,
        })
    }

    /// Reduced constants `K1 = 2(a2 - a*a1)/c1`, `K2 = 2(a1 - a*a2)/c2`.
    pub fn derive_constants(&self) -> GameConstants {
        GameConstants {
            k1: 2.0 * (self.alpha2 - self.alpha * self.alpha1) / self.c1,
            k2: 2.0 * (self.alpha1 - self.alpha * self.alpha2) / self.c2,
            c1: self.c1,
            c2: self.c2,
        }
    }

    /// Exchanges the leader and follower roles.
    pub fn swapped(&self) -> GameParams {
        GameParams {
            alpha1: self.alpha2,
            alpha2: self.alpha1,
            alpha: self.alpha,
            c1: self.c2,
            c2: self.c1,
        }
    }
}

pub(crate) fn check_step_probability(a: f64) -> Result<()> {
    if a > 0.0 && a < 0.5 {
        Ok(())
    } else {
        Err(GameError::StepProbability(a))
    }
}

fn check_cost(c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(GameError::SamplingCost(c))
    }
}

/// Reduced parameterization that fully determines the equilibrium.
///
/// Any finite `K1`, `K2` is accepted, whether or not it is reachable from
/// some valid [`GameParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameConstants {
    pub k1: f64,
    pub k2: f64,
    pub c1: f64,
    pub c2: f64,
}

impl GameConstants {
    pub fn new(k1: f64, k2: f64, c1: f64, c2: f64) -> Result<Self> {
        for k in [k1, k2] {
            if !k.is_finite() {
                return Err(GameError::IncentiveConstant(k));
            }
        }
        check_cost(c1)?;
        check_cost(c2)?;
        Ok(GameConstants { k1, k2, c1, c2 })
    }

    /// Unit sampling costs, as used for the reference figures.
    pub fn unit_costs(k1: f64, k2: f64) -> Result<Self> {
        GameConstants::new(k1, k2, 1.0, 1.0)
    }

    pub fn swapped(&self) -> GameConstants {
        GameConstants {
            k1: self.k2,
            k2: self.k1,
            c1: self.c2,
            c2: self.c1,
        }
    }

    /// Cost rescaled by `leader` and `follower` with `K1`, `K2` held fixed.
    pub fn with_costs(&self, c1: f64, c2: f64) -> Result<GameConstants> {
        GameConstants::new(self.k1, self.k2, c1, c2)
    }
}

impl From<GameParams> for GameConstants {
    fn from(params: GameParams) -> Self {
        params.derive_constants()
    }
}

/// Stationary per-step sampling probabilities of the two players.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PolicyPair {
    pub p1: f64,
    pub p2: f64,
}

impl PolicyPair {
    pub fn new(p1: f64, p2: f64) -> Result<Self> {
        for p in [p1, p2] {
            if !(0.0..=1.0).contains(&p) {
                return Err(GameError::SamplingProbability(p));
            }
        }
        Ok(PolicyPair { p1, p2 })
    }

    /// Probability that at least one player samples in a given step.
    pub fn reset_probability(&self) -> f64 {
        1.0 - (1.0 - self.p1) * (1.0 - self.p2)
    }

    pub fn swapped(&self) -> PolicyPair {
        PolicyPair {
            p1: self.p2,
            p2: self.p1,
        }
    }

    /// Stationary probability that the shared age equals `age`.
    pub fn stationary_age_probability(&self, age: usize) -> f64 {
        let q = self.reset_probability();
        q * (1.0 - q).powi(age as i32)
    }

    /// Mean age per reset, `(1 - q)/q`; infinite when nobody samples.
    fn stale_ratio(&self) -> ExtendedValue {
        let q = self.reset_probability();
        if q == 0.0 {
            ExtendedValue::PosInfinity
        } else {
            ExtendedValue::Finite((1.0 - self.p1) * (1.0 - self.p2) / q)
        }
    }
}

/// See [`PolicyPair::reset_probability`].
pub fn reset_probability(policy: PolicyPair) -> f64 {
    policy.reset_probability()
}

/// Long-run mean squared error about a walk with the given step probability.
pub fn average_error(step_prob: f64, policy: PolicyPair) -> ExtendedValue {
    policy.stale_ratio() * (2.0 * step_prob)
}

/// Leader cost `J1 = c1 * (K1 * (1 - q)/q + p1)`.
pub fn leader_cost(constants: &GameConstants, policy: PolicyPair) -> ExtendedValue {
    leader_unit_cost(constants.k1, policy) * constants.c1
}

/// Follower cost `J2 = c2 * (K2 * (1 - q)/q + p2)`.
pub fn follower_cost(constants: &GameConstants, policy: PolicyPair) -> ExtendedValue {
    (policy.stale_ratio() * constants.k2 + policy.p2) * constants.c2
}

/// Leader cost divided by `c1`. Equilibrium selection compares this so that
/// the chosen candidate cannot depend on the scale of `c1`.
pub(crate) fn leader_unit_cost(k1: f64, policy: PolicyPair) -> ExtendedValue {
    policy.stale_ratio() * k1 + policy.p1
}

/// `dJ1/dp1 = c1 * (1 - K1 (1 - p2) / q^2)`. Requires `q > 0`.
pub fn leader_cost_slope(constants: &GameConstants, policy: PolicyPair) -> f64 {
    let q = policy.reset_probability();
    constants.c1 * (1.0 - constants.k1 * (1.0 - policy.p2) / (q * q))
}

/// `dJ2/dp2 = c2 * (1 - K2 (1 - p1) / q^2)`. Requires `q > 0`.
pub fn follower_cost_slope(constants: &GameConstants, policy: PolicyPair) -> f64 {
    let q = policy.reset_probability();
    constants.c2 * (1.0 - constants.k2 * (1.0 - policy.p1) / (q * q))
}
