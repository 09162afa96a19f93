use thiserror::Error;

pub type Result<T, E = GameError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("walk step probability {0} must lie in (0, 0.5)")]
    StepProbability(f64),
    #[error("revelation weight alpha {0} must be finite and nonnegative")]
    RevelationWeight(f64),
    #[error("sampling cost {0} must be finite and positive")]
    SamplingCost(f64),
    #[error("sampling probability {0} must lie in [0, 1]")]
    SamplingProbability(f64),
    #[error("incentive constant {0} must be finite")]
    IncentiveConstant(f64),
    #[error("operation requires K2 {expected}, got K2 = {k2}")]
    Regime { k2: f64, expected: &'static str },
    #[error("horizon must be at least one step")]
    Horizon,
    #[error("age cap must be at least one")]
    AgeCap,
    #[error("age {age} outside supported range {min}..={max}")]
    AgeOutOfRange { age: usize, min: usize, max: usize },
    #[error("age bucket {age} visited {visits} times, need at least {required}")]
    InsufficientVisits {
        age: usize,
        visits: u64,
        required: u64,
    },
    #[error("grid step {0} must lie in (0, 0.01]")]
    GridStep(f64),
}
