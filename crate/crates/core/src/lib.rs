//! Two-player remote estimation games over independent random walks.
//!
//! Each player tracks the other's lazy random walk by sampling it with a
//! fixed per-step probability. Any sample reveals *both* states to *both*
//! players, so sampling trades estimation accuracy against information
//! leakage and sampling cost. This crate provides:
//!
//! * [`game`]: domain types and the closed-form long-run costs,
//! * [`best_response`]: the follower's best response and the leader's
//!   reduced piecewise objective,
//! * [`equilibrium`]: Stackelberg equilibria in every `(K1, K2)` regime,
//! * [`simulator`]: a seeded Monte Carlo run of the sampling protocol,
//! * [`oracle`]: brute-force verifiers (grid search, multinomial enumeration).

pub mod best_response;
pub mod equilibrium;
mod error;
pub mod game;
pub mod oracle;
pub mod simulator;
mod value;

pub use best_response::{RegionBounds, RegionTag};
pub use equilibrium::{Candidate, Equilibrium, Regime};
pub use error::{GameError, Result};
pub use game::{GameConstants, GameParams, PolicyPair};
pub use simulator::{EmpiricalCost, Player, SimConfig, SimResult};
pub use value::ExtendedValue;
