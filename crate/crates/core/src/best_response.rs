//! Follower best response and the leader's reduced objective.
//!
//! For `K2 > 0` the follower's best response splits the leader's strategy
//! space into three intervals: the follower always samples below `p1_lower`,
//! it never samples at or above `p1_upper`, and in between it samples just
//! enough to meet its first-order condition. Substituting the response into
//! the leader's cost gives a piecewise objective in `p1` alone.

use crate::error::{GameError, Result};
use crate::game::{leader_cost, GameConstants, PolicyPair};
use crate::value::ExtendedValue;

/// Absolute distance within which `p1` is treated as sitting exactly on a
/// region boundary.
pub const BOUNDARY_SNAP: f64 = 1e-12;

/// Region boundaries of the follower's best response at a fixed `K2 > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionBounds {
    /// Largest `p1` at which the follower still samples every step.
    pub p1_lower: f64,
    /// Smallest `p1` at which the follower stops sampling.
    pub p1_upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionTag {
    /// Follower samples with probability one.
    FollowerSaturated,
    /// Follower meets its first-order condition strictly inside `(0, 1]`.
    Interior,
    /// Follower never samples.
    FollowerSilent,
    /// `K2 <= 0`: the follower cost increases in `p2`, so it never samples.
    NonpositiveK2,
}

impl RegionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionTag::FollowerSaturated => "follower_saturated",
            RegionTag::Interior => "interior",
            RegionTag::FollowerSilent => "follower_silent",
            RegionTag::NonpositiveK2 => "nonpositive_k2",
        }
    }

    pub fn parse(s: &str) -> Option<RegionTag> {
        [
            RegionTag::FollowerSaturated,
            RegionTag::Interior,
            RegionTag::FollowerSilent,
            RegionTag::NonpositiveK2,
        ]
        .into_iter()
        .find(|tag| tag.as_str() == s)
    }
}

impl std::fmt::Display for RegionTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `p1_lower = max(0, 1 - 1/K2)` and `p1_upper = (sqrt(K2^2 + 4 K2) - K2)/2`.
pub fn bounds(k2: f64) -> Result<RegionBounds> {
    if !(k2 > 0.0 && k2.is_finite()) {
        return Err(GameError::Regime {
            k2,
            expected: "> 0",
        });
    }
    let p1_lower = (1.0 - 1.0 / k2).max(0.0);
    // Rationalized root; the textbook form cancels badly for large K2.
    let p1_upper = 2.0 / (1.0 + (1.0 + 4.0 / k2).sqrt());
    Ok(RegionBounds { p1_lower, p1_upper })
}

/// Follower's cost-minimizing sampling probability for a fixed `p1`.
///
/// Boundaries follow half-open intervals: `p1_lower` belongs to the
/// interior region and `p1_upper` to the silent region. `p1 = 1` is always
/// silent since the follower's error term vanishes there.
pub fn follower_br(k2: f64, p1: f64) -> (f64, RegionTag) {
    debug_assert!((0.0..=1.0).contains(&p1), "p1 = {p1}");
    let Ok(b) = bounds(k2) else {
        return (0.0, RegionTag::NonpositiveK2);
    };
    if (p1 - b.p1_lower).abs() <= BOUNDARY_SNAP {
        return (k2.sqrt().min(1.0), RegionTag::Interior);
    }
    if p1 >= b.p1_upper - BOUNDARY_SNAP {
        return (0.0, RegionTag::FollowerSilent);
    }
    if p1 < b.p1_lower {
        return (1.0, RegionTag::FollowerSaturated);
    }
    let stay = 1.0 - p1;
    let p2 = 1.0 - (1.0 - (k2 * stay).sqrt()) / stay;
    (p2.clamp(0.0, 1.0), RegionTag::Interior)
}

/// Convenience wrapper returning the full policy pair `(p1, BR(p1))`.
pub fn respond(constants: &GameConstants, p1: f64) -> PolicyPair {
    let (p2, _) = follower_br(constants.k2, p1);
    PolicyPair { p1, p2 }
}

/// Leader cost with the follower's best response substituted, evaluated
/// through the piecewise closed form rather than through [`leader_cost`].
pub fn leader_reduced_cost(constants: &GameConstants, p1: f64) -> (ExtendedValue, RegionTag) {
    let GameConstants { k1, k2, c1, .. } = *constants;
    let (_, region) = follower_br(k2, p1);
    let unit = match region {
        RegionTag::FollowerSaturated => ExtendedValue::Finite(p1),
        RegionTag::Interior => {
            ExtendedValue::Finite(k1 / k2.sqrt() / (1.0 - p1).sqrt() - k1 + p1)
        }
        RegionTag::FollowerSilent | RegionTag::NonpositiveK2 => {
            let ratio = if p1 == 0.0 {
                ExtendedValue::PosInfinity
            } else {
                ExtendedValue::Finite((1.0 - p1) / p1)
            };
            ratio * k1 + p1
        }
    };
    (unit * c1, region)
}

/// Reduced-objective slope on the interior branch,
/// `c1 * (K1 / (2 sqrt(K2)) * (1 - p1)^(-3/2) + 1)`.
pub fn interior_slope(constants: &GameConstants, p1: f64) -> f64 {
    let GameConstants { k1, k2, c1, .. } = *constants;
    c1 * (k1 / (2.0 * k2.sqrt()) * (1.0 - p1).powf(-1.5) + 1.0)
}

/// [`leader_cost`] at `(p1, BR(p1))`.
pub fn leader_cost_at_response(constants: &GameConstants, p1: f64) -> ExtendedValue {
    leader_cost(constants, respond(constants, p1))
}
