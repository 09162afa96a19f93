//! Stackelberg equilibria with player 1 leading.
//!
//! For `K2 <= 0` the follower never samples and the leader's problem is a
//! single convex (or monotone) function of `p1`, solved in closed form. For
//! `K2 > 0` the leader's reduced objective is piecewise with at most three
//! candidate minimizers; the equilibrium is the cheapest of them.

use std::cmp::Ordering;

use crate::best_response::{bounds, follower_br};
use crate::error::{GameError, Result};
use crate::game::{follower_cost, leader_unit_cost, GameConstants, PolicyPair};
use crate::value::ExtendedValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    K2NonPos,
    K2PosK1Neg,
    K2PosK1NonNeg,
}

impl Regime {
    pub fn classify(constants: &GameConstants) -> Regime {
        if constants.k2 <= 0.0 {
            Regime::K2NonPos
        } else if constants.k1 < 0.0 {
            Regime::K2PosK1Neg
        } else {
            Regime::K2PosK1NonNeg
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::K2NonPos => "k2_nonpositive",
            Regime::K2PosK1Neg => "k2_positive_k1_negative",
            Regime::K2PosK1NonNeg => "k2_positive_k1_nonnegative",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A policy pair considered by the solver, with the leader's cost there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub policy: PolicyPair,
    pub leader_value: ExtendedValue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Equilibrium {
    pub policy: PolicyPair,
    pub leader_value: ExtendedValue,
    pub follower_value: ExtendedValue,
    pub regime: Regime,
    /// Every candidate evaluated, in evaluation order.
    pub candidates: Vec<Candidate>,
}

impl Equilibrium {
    fn assemble(constants: &GameConstants, policy: PolicyPair, candidates: Vec<Candidate>) -> Self {
        let leader_value = leader_unit_cost(constants.k1, policy) * constants.c1;
        Equilibrium {
            policy,
            leader_value,
            follower_value: follower_cost(constants, policy),
            regime: Regime::classify(constants),
            candidates,
        }
    }
}

fn evaluate(constants: &GameConstants, policies: &[PolicyPair]) -> Vec<Candidate> {
    policies
        .iter()
        .map(|&policy| Candidate {
            policy,
            leader_value: leader_unit_cost(constants.k1, policy) * constants.c1,
        })
        .collect()
}

/// Orders by leader cost, then smaller `p1`, then smaller `p2`.
pub(crate) fn compare_choices(a: (ExtendedValue, PolicyPair), b: (ExtendedValue, PolicyPair)) -> Ordering {
    a.0.partial_cmp(&b.0)
        .expect("costs are never NaN")
        .then(a.1.p1.total_cmp(&b.1.p1))
        .then(a.1.p2.total_cmp(&b.1.p2))
}

fn dedup(policies: &mut Vec<PolicyPair>) {
    let mut seen: Vec<PolicyPair> = Vec::with_capacity(policies.len());
    policies.retain(|p| {
        if seen.contains(p) {
            false
        } else {
            seen.push(*p);
            true
        }
    });
}

/// Closed-form equilibrium `(min(sqrt(max(K1, 0)), 1), 0)` for `K2 <= 0`.
pub fn solve_k2_nonpositive(constants: &GameConstants) -> Result<Equilibrium> {
    if constants.k2 > 0.0 {
        return Err(GameError::Regime {
            k2: constants.k2,
            expected: "<= 0",
        });
    }
    let p1 = constants.k1.max(0.0).sqrt().min(1.0);
    let policy = PolicyPair { p1, p2: 0.0 };
    // The endpoints are recorded so the audit trail shows what was beaten.
    let mut audit = vec![PolicyPair { p1: 0.0, p2: 0.0 }, policy, PolicyPair { p1: 1.0, p2: 0.0 }];
    dedup(&mut audit);
    Ok(Equilibrium::assemble(constants, policy, evaluate(constants, &audit)))
}

/// Finite set of possible leader commitments for `K2 > 0`, paired with the
/// follower's response, duplicates removed.
pub fn candidate_set(constants: &GameConstants) -> Result<Vec<PolicyPair>> {
    let b = bounds(constants.k2)?;
    let at = |p1: f64| PolicyPair {
        p1,
        p2: follower_br(constants.k2, p1).0,
    };
    let silent_p1 = if constants.k1 < 0.0 {
        b.p1_upper
    } else {
        constants.k1.sqrt().max(b.p1_upper).min(1.0)
    };
    let mut policies = vec![at(0.0), at(b.p1_lower), at(silent_p1)];
    dedup(&mut policies);
    Ok(policies)
}

/// Equilibrium for `K2 > 0`: the cheapest member of [`candidate_set`].
pub fn solve_k2_positive(constants: &GameConstants) -> Result<Equilibrium> {
    let policies = candidate_set(constants)?;
    // Compared on the c1-free cost so the argmin is exactly invariant to c1.
    let best = policies
        .iter()
        .map(|&p| (leader_unit_cost(constants.k1, p), p))
        .min_by(|a, b| compare_choices(*a, *b))
        .map(|(_, p)| p)
        .expect("candidate set is never empty");
    Ok(Equilibrium::assemble(constants, best, evaluate(constants, &policies)))
}

/// Stackelberg equilibrium in whichever regime `constants` falls.
pub fn solve(constants: &GameConstants) -> Equilibrium {
    let result = if constants.k2 <= 0.0 {
        solve_k2_nonpositive(constants)
    } else {
        solve_k2_positive(constants)
    };
    result.expect("dispatch matches the regime precondition")
}
