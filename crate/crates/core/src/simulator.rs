//! Seeded Monte Carlo execution of the sampling protocol.
//!
//! Each step runs in a fixed order: both walks move, each player decides
//! whether to sample, any sample reveals both current states to both
//! players, and then the squared estimation errors are recorded. The RNG
//! stream is consumed in the order walk 1, walk 2, sample 1, sample 2.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GameError, Result};
use crate::game::{check_step_probability, GameParams, PolicyPair};

/// Visits an age bucket needs before its conditional mean is reported.
pub const MIN_BUCKET_VISITS: u64 = 100;

pub const DEFAULT_AGE_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Leader,
    Follower,
}

impl Player {
    fn index(self) -> usize {
        match self {
            Player::Leader => 0,
            Player::Follower => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub params: GameParams,
    pub policy: PolicyPair,
    pub horizon: u64,
    pub seed: u64,
    /// Largest age with its own histogram bucket; older ages are pooled.
    pub age_cap: usize,
}

impl SimConfig {
    pub fn new(params: GameParams, policy: PolicyPair, horizon: u64, seed: u64) -> Self {
        SimConfig {
            params,
            policy,
            horizon,
            seed,
            age_cap: DEFAULT_AGE_CAP,
        }
    }

    pub fn with_age_cap(mut self, age_cap: usize) -> Self {
        self.age_cap = age_cap;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(GameError::Horizon);
        }
        if self.age_cap == 0 {
            return Err(GameError::AgeCap);
        }
        // Fields are public, so re-check what the constructors guarantee.
        GameParams::new(
            self.params.alpha1,
            self.params.alpha2,
            self.params.alpha,
            self.params.c1,
            self.params.c2,
        )?;
        PolicyPair::new(self.policy.p1, self.policy.p2)?;
        Ok(())
    }
}

/// Time-averaged statistics from one run. Index 0 refers to the leader and
/// index 1 to the follower throughout.
#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub horizon: u64,
    pub age_cap: usize,
    /// Mean of the squared error each player holds about its opponent.
    pub mean_sq_error: [f64; 2],
    /// Fraction of steps in which each player sampled.
    pub sample_rate: [f64; 2],
    /// Fraction of steps in which anyone sampled.
    pub reset_rate: f64,
    /// Empirical law of the shared age for ages `0..=age_cap`.
    pub age_histogram: Vec<f64>,
    /// Mass of ages beyond `age_cap`.
    pub age_tail: f64,
    /// Steps spent at each age `0..=age_cap`.
    pub age_visits: Vec<u64>,
    /// Per player, empirical mean squared error given the age; `None` for
    /// buckets never visited.
    pub cond_error_by_age: [Vec<Option<f64>>; 2],
    /// Set when neither player can ever sample, so errors grow without bound.
    pub diverges: bool,
}

/// Empirical counterpart of the long-run costs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalCost {
    pub leader: f64,
    pub follower: f64,
    /// The run had zero reset probability; the finite-horizon values do not
    /// converge.
    pub divergent: bool,
}

/// One lazy walk step: `+1` and `-1` each with probability `step_prob`.
pub fn step_walk<R: Rng + ?Sized>(state: i64, step_prob: f64, rng: &mut R) -> i64 {
    let u: f64 = rng.random();
    if u < step_prob {
        state + 1
    } else if u < 2.0 * step_prob {
        state - 1
    } else {
        state
    }
}

pub fn run(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    let SimConfig {
        params,
        policy,
        horizon,
        seed,
        age_cap,
    } = *config;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut state = [0i64; 2];
    // estimate[i] is player i's estimate of the opponent's walk.
    let mut estimate = [0i64; 2];
    let mut last_message = [0u64; 2];
    let mut any_reset = false;

    let mut sq_error_sum = [0f64; 2];
    let mut samples = [0u64; 2];
    let mut resets = 0u64;
    let mut visits = vec![0u64; age_cap + 1];
    let mut tail = 0u64;
    let mut cond_sum = [vec![0f64; age_cap + 1], vec![0f64; age_cap + 1]];

    for t in 1..=horizon {
        state[0] = step_walk(state[0], params.alpha1, &mut rng);
        state[1] = step_walk(state[1], params.alpha2, &mut rng);
        let sampled = [
            rng.random_bool(policy.p1),
            rng.random_bool(policy.p2),
        ];
        if sampled[0] || sampled[1] {
            estimate = [state[1], state[0]];
            last_message = [t, t];
            any_reset = true;
            resets += 1;
        }
        for (count, &s) in samples.iter_mut().zip(&sampled) {
            *count += u64::from(s);
        }

        let ages = [t - last_message[0], t - last_message[1]];
        if any_reset {
            assert_eq!(ages[0], ages[1], "ages diverged at step {t}");
        }
        let age = ages[0] as usize;
        let errors = [
            (state[1] - estimate[0]) as f64,
            (state[0] - estimate[1]) as f64,
        ];
        for i in 0..2 {
            let e2 = errors[i] * errors[i];
            sq_error_sum[i] += e2;
            if age <= age_cap {
                cond_sum[i][age] += e2;
            }
        }
        if age <= age_cap {
            visits[age] += 1;
        } else {
            tail += 1;
        }
    }

    let n = horizon as f64;
    let cond_error_by_age = cond_sum.map(|sums| {
        sums.iter()
            .zip(&visits)
            .map(|(&s, &v)| (v > 0).then(|| s / v as f64))
            .collect()
    });
    Ok(SimResult {
        horizon,
        age_cap,
        mean_sq_error: sq_error_sum.map(|s| s / n),
        sample_rate: samples.map(|s| s as f64 / n),
        reset_rate: resets as f64 / n,
        age_histogram: visits.iter().map(|&v| v as f64 / n).collect(),
        age_tail: tail as f64 / n,
        age_visits: visits,
        cond_error_by_age,
        diverges: policy.reset_probability() == 0.0,
    })
}

impl SimResult {
    /// Leader's empirical mean squared error about the follower at `age`.
    pub fn conditional_error(&self, age: usize) -> Result<f64> {
        self.conditional_error_for(Player::Leader, age)
    }

    pub fn conditional_error_for(&self, player: Player, age: usize) -> Result<f64> {
        if age > self.age_cap {
            return Err(GameError::AgeOutOfRange {
                age,
                min: 0,
                max: self.age_cap,
            });
        }
        let visits = self.age_visits[age];
        if visits < MIN_BUCKET_VISITS {
            return Err(GameError::InsufficientVisits {
                age,
                visits,
                required: MIN_BUCKET_VISITS,
            });
        }
        Ok(self.cond_error_by_age[player.index()][age].expect("visited bucket"))
    }

    /// Least-squares slope (with intercept) of the conditional error
    /// against age over `ages`, skipping undersampled buckets.
    pub fn conditional_error_slope(
        &self,
        player: Player,
        ages: std::ops::RangeInclusive<usize>,
    ) -> Option<f64> {
        let points: Vec<(f64, f64)> = ages
            .filter_map(|a| {
                self.conditional_error_for(player, a)
                    .ok()
                    .map(|e| (a as f64, e))
            })
            .collect();
        if points.len() < 2 {
            return None;
        }
        let n = points.len() as f64;
        let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
        let my = points.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
        Some(sxy / sxx)
    }

    pub fn histogram_mass(&self) -> f64 {
        self.age_histogram.iter().sum::<f64>() + self.age_tail
    }

    /// Total-variation distance between the empirical age law and the
    /// geometric law with reset probability `q`.
    pub fn age_tv_distance(&self, q: f64) -> f64 {
        let mut dist = 0.0;
        for (k, &mass) in self.age_histogram.iter().enumerate() {
            dist += (mass - q * (1.0 - q).powi(k as i32)).abs();
        }
        let tail = (1.0 - q).powi(self.age_cap as i32 + 1);
        dist += (self.age_tail - tail).abs();
        dist / 2.0
    }
}

/// `J_i = own error - alpha * opponent's error + c_i * sample rate`.
pub fn empirical_cost(result: &SimResult, params: &GameParams) -> EmpiricalCost {
    let [e1, e2] = result.mean_sq_error;
    EmpiricalCost {
        leader: e1 - params.alpha * e2 + params.c1 * result.sample_rate[0],
        follower: e2 - params.alpha * e1 + params.c2 * result.sample_rate[1],
        divergent: result.diverges,
    }
}

/// Draws `n` increments of a lazy walk and returns their counts of
/// `(+1, 0, -1)`.
pub fn increment_counts(step_prob: f64, n: u64, seed: u64) -> Result<[u64; 3]> {
    check_step_probability(step_prob)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0u64; 3];
    for _ in 0..n {
        match step_walk(0, step_prob, &mut rng) {
            1 => counts[0] += 1,
            0 => counts[1] += 1,
            _ => counts[2] += 1,
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a1: f64, a2: f64) -> GameParams {
        GameParams::new(a1, a2, 0.5, 1.0, 2.0).unwrap()
    }

    fn config(p1: f64, p2: f64, horizon: u64) -> SimConfig {
        SimConfig::new(params(0.2, 0.25), PolicyPair::new(p1, p2).unwrap(), horizon, 11)
    }

    #[test]
    fn zero_horizon_is_rejected() {
        assert_eq!(run(&config(0.5, 0.5, 0)), Err(GameError::Horizon));
        assert_eq!(
            run(&config(0.5, 0.5, 10).with_age_cap(0)),
            Err(GameError::AgeCap)
        );
    }

    #[test]
    fn leader_sampling_every_step_pins_errors_at_zero() {
        for p2 in [0.0, 0.4, 1.0] {
            let r = run(&config(1.0, p2, 5_000)).unwrap();
            assert_eq!(r.mean_sq_error, [0.0, 0.0]);
            assert_eq!(r.age_histogram[0], 1.0);
        }
    }

    #[test]
    fn full_sampling_costs_exactly_the_sampling_price() {
        let cfg = config(1.0, 1.0, 1_000);
        let r = run(&cfg).unwrap();
        let cost = empirical_cost(&r, &cfg.params);
        assert_eq!((cost.leader, cost.follower), (1.0, 2.0));
        assert!(!cost.divergent);
    }

    #[test]
    fn silent_players_flag_divergence() {
        let r = run(&config(0.0, 0.0, 2_000)).unwrap();
        assert!(r.diverges);
        assert_eq!(r.reset_rate, 0.0);
        assert!(r.mean_sq_error[0] > 0.0);
        assert_eq!(r.age_visits[0], 0);
    }

    #[test]
    fn runs_are_deterministic_per_seed() {
        let cfg = config(0.3, 0.2, 20_000);
        assert_eq!(run(&cfg).unwrap(), run(&cfg).unwrap());
        let other = SimConfig { seed: 12, ..cfg };
        assert_ne!(run(&cfg).unwrap().mean_sq_error, run(&other).unwrap().mean_sq_error);
    }

    #[test]
    fn histogram_mass_is_one() {
        let r = run(&config(0.05, 0.02, 50_000).with_age_cap(8)).unwrap();
        assert!((r.histogram_mass() - 1.0).abs() < 1e-12);
        assert!(r.age_tail > 0.0);
    }

    #[test]
    fn age_zero_has_zero_error() {
        let r = run(&config(0.3, 0.3, 10_000)).unwrap();
        assert_eq!(r.conditional_error(0).unwrap(), 0.0);
        assert_eq!(r.conditional_error_for(Player::Follower, 0).unwrap(), 0.0);
    }

    #[test]
    fn undersampled_and_out_of_range_buckets_are_rejected() {
        let r = run(&config(0.6, 0.6, 1_000).with_age_cap(10)).unwrap();
        assert!(matches!(
            r.conditional_error(9),
            Err(GameError::InsufficientVisits { age: 9, .. })
        ));
        assert!(matches!(
            r.conditional_error(11),
            Err(GameError::AgeOutOfRange { age: 11, .. })
        ));
    }

    #[test]
    fn reset_frequency_matches_binomial_law() {
        for &(p1, p2) in &[(0.1, 0.3), (0.3, 0.2), (0.7, 0.1)] {
            let n = 200_000u64;
            let r = run(&config(p1, p2, n)).unwrap();
            let q = PolicyPair { p1, p2 }.reset_probability();
            let sd = (q * (1.0 - q) / n as f64).sqrt();
            assert!((r.reset_rate - q).abs() <= 3.0 * sd, "p=({p1},{p2})");
        }
    }

    #[test]
    fn increment_frequencies_match_step_law() {
        let n = 1_000_000;
        let counts = increment_counts(0.25, n, 3).unwrap();
        let freq = counts.map(|c| c as f64 / n as f64);
        for (f, expected) in freq.iter().zip([0.25, 0.5, 0.25]) {
            assert!((f - expected).abs() < 0.005);
        }
        let mean = (counts[0] as f64 - counts[2] as f64) / n as f64;
        let second = (counts[0] + counts[2]) as f64 / n as f64;
        let var = second - mean * mean;
        let sigma = (0.5f64 / n as f64).sqrt();
        assert!(mean.abs() <= 3.0 * sigma);
        assert!((var - 0.5).abs() <= 0.02 * 0.5);
    }

    #[test]
    fn tiny_step_probability_almost_never_moves() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let moved = (0..10_000).filter(|_| step_walk(5, 1e-9, &mut rng) != 5).count();
        assert_eq!(moved, 0);
    }
}
