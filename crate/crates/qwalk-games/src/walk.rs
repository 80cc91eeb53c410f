//! Complete iterated game runs.
//!
//! Unitary mode iterates the composite step (coin, then shift) on a pure
//! state. Measured mode models a projective measurement of the joint coin
//! after every coin operation and before the shift: it propagates the
//! resulting probability distribution exactly rather than sampling, which
//! is what lets the classical-limit checks demand 1e-10 agreement.

use std::collections::HashMap;

use crate::classical::JointCoinDistribution;
use crate::error::{Error, Result};
use crate::qstate::{CoinBasis, CoinOperator, CoinState, JointState, PayoffTable};

/// Evolution mode of a game run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Unitary,
    Measured,
}

/// Which optional series a run should record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RecordFlags {
    /// Per-step payoff means.
    pub trajectory: bool,
    /// Per-step entanglement entropy (unitary mode only).
    pub entropy_series: bool,
    /// Position distribution after the final step.
    pub final_distribution: bool,
}

/// Everything needed to run one game.
#[derive(Debug, Clone)]
pub struct GameConfig {
    pub payoffs: PayoffTable,
    /// The per-round joint coin operator, already composed and validated.
    pub coin_op: CoinOperator,
    pub initial_coin: CoinState,
    pub steps: u32,
    pub mode: Mode,
    pub record: RecordFlags,
}

/// One site of a payoff distribution.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SiteProbability {
    pub x_a: i64,
    pub x_b: i64,
    pub probability: f64,
}

/// Observables gathered from one simulated game.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GameResult {
    pub mode: Mode,
    pub steps: u32,
    pub payoff_mean_a: f64,
    pub payoff_mean_b: f64,
    /// `(x̄_A, x̄_B)` after each step, length `steps`, when recorded.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<Vec<(f64, f64)>>,
    /// Entanglement entropy in bits after each step, length `steps`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy_series: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_distribution: Option<Vec<SiteProbability>>,
}

impl GameResult {
    pub fn payoff_means(&self) -> (f64, f64) {
        (self.payoff_mean_a, self.payoff_mean_b)
    }
}

fn distribution_sites(dist: Vec<((i64, i64), f64)>) -> Vec<SiteProbability> {
    dist.into_iter()
        .map(|((x_a, x_b), probability)| SiteProbability {
            x_a,
            x_b,
            probability,
        })
        .collect()
}

/// Run a unitary-mode game: apply the composite step `steps` times from
/// the point-localized initial state and collect the requested series.
/// Fully deterministic — identical configs produce bitwise-identical
/// results.
pub fn run_game(config: &GameConfig) -> Result<GameResult> {
    if config.mode != Mode::Unitary {
        return Err(Error::InvalidConfig(
            "run_game requires unitary mode; use run_measured instead".into(),
        ));
    }
    let mut state = JointState::from_coin(&config.initial_coin)?;
    let mut trajectory = config.record.trajectory.then(Vec::new);
    let mut entropy_series = config.record.entropy_series.then(Vec::new);
    for _ in 0..config.steps {
        state = state.step(&config.coin_op, &config.payoffs);
        if let Some(t) = trajectory.as_mut() {
            t.push(state.payoff_means());
        }
        if let Some(s) = entropy_series.as_mut() {
            s.push(state.entanglement_entropy());
        }
    }
    let (payoff_mean_a, payoff_mean_b) = state.payoff_means();
    Ok(GameResult {
        mode: Mode::Unitary,
        steps: config.steps,
        payoff_mean_a,
        payoff_mean_b,
        trajectory,
        entropy_series,
        final_distribution: config
            .record
            .final_distribution
            .then(|| distribution_sites(state.payoff_distribution())),
    })
}

/// Classical-limit run: the joint coin is projectively decohered after
/// each coin operation, before the shift. The initial coin distribution is
/// the measured initial coin state, `|⟨c|c_0⟩|²`.
pub fn run_measured(config: &GameConfig) -> Result<GameResult> {
    let amps = config.initial_coin.amps();
    let mut probs = [0.0; 4];
    for (slot, a) in probs.iter_mut().zip(amps.iter()) {
        *slot = a.norm_sqr();
    }
    // Renormalize away the rounding of |amps|²; the coin itself was
    // already checked to norm tolerance.
    let total: f64 = probs.iter().sum();
    for p in probs.iter_mut() {
        *p /= total;
    }
    run_measured_with_distribution(config, &JointCoinDistribution::new(probs)?)
}

/// Measured-mode run from an explicit initial joint-coin distribution.
/// Exposed separately because correlated mixtures (e.g. half CC, half DD)
/// are not the measurement of any product reading of "each starts with C
/// with probability 1/2" — callers choose the reading.
pub fn run_measured_with_distribution(
    config: &GameConfig,
    initial: &JointCoinDistribution,
) -> Result<GameResult> {
    if config.mode != Mode::Measured {
        return Err(Error::InvalidConfig(
            "run_measured requires measured mode".into(),
        ));
    }
    if config.record.entropy_series {
        return Err(Error::InvalidConfig(
            "entropy series is only defined for unitary mode".into(),
        ));
    }

    // Coin transition probabilities from the unitary's entry moduli.
    let mut transition = [[0.0; 4]; 4];
    for (to_idx, row) in transition.iter_mut().enumerate() {
        for (from_idx, p) in row.iter_mut().enumerate() {
            let to = CoinBasis::from_index(to_idx);
            let from = CoinBasis::from_index(from_idx);
            *p = config.coin_op.entry(to, from).norm_sqr();
        }
    }

    let mut mixed = MixedState::from_distribution(initial);
    let mut trajectory = config.record.trajectory.then(Vec::new);
    for _ in 0..config.steps {
        mixed = mixed.step(&transition, &config.payoffs);
        if let Some(t) = trajectory.as_mut() {
            t.push(mixed.payoff_means());
        }
    }
    let (payoff_mean_a, payoff_mean_b) = mixed.payoff_means();
    Ok(GameResult {
        mode: Mode::Measured,
        steps: config.steps,
        payoff_mean_a,
        payoff_mean_b,
        trajectory,
        entropy_series: None,
        final_distribution: config
            .record
            .final_distribution
            .then(|| distribution_sites(mixed.distribution())),
    })
}

/// Sparse probability field over `(x_A, x_B, joint coin)`: the state of a
/// measured-mode run.
#[derive(Debug, Clone)]
pub struct MixedState {
    probs: HashMap<(i64, i64), [f64; 4]>,
}

impl MixedState {
    pub fn from_distribution(initial: &JointCoinDistribution) -> MixedState {
        let mut probs = HashMap::new();
        probs.insert((0, 0), initial.probabilities());
        MixedState { probs }
    }

    /// One measured round: coin mass redistributes by the transition
    /// probabilities, then each coin component's position shifts by its
    /// payoff pair. Every target slot has exactly one source site, so the
    /// update is exact and order-independent.
    fn step(&self, transition: &[[f64; 4]; 4], payoffs: &PayoffTable) -> MixedState {
        let mut next: HashMap<(i64, i64), [f64; 4]> = HashMap::with_capacity(self.probs.len() * 2);
        for (&(xa, xb), mass) in &self.probs {
            for to in CoinBasis::ALL {
                let mut acc = 0.0;
                for from in CoinBasis::ALL {
                    acc += transition[to.index()][from.index()] * mass[from.index()];
                }
                if acc > 0.0 {
                    let target = (xa + payoffs.alice_step(to), xb + payoffs.bob_step(to));
                    next.entry(target).or_insert([0.0; 4])[to.index()] = acc;
                }
            }
        }
        MixedState { probs: next }
    }

    pub fn total_mass(&self) -> f64 {
        let mut keys: Vec<_> = self.probs.keys().copied().collect();
        keys.sort_unstable();
        keys.iter().map(|k| self.probs[k].iter().sum::<f64>()).sum()
    }

    pub fn payoff_means(&self) -> (f64, f64) {
        let mut keys: Vec<_> = self.probs.keys().copied().collect();
        keys.sort_unstable();
        let mut mean_a = 0.0;
        let mut mean_b = 0.0;
        for (xa, xb) in keys {
            let p: f64 = self.probs[&(xa, xb)].iter().sum();
            mean_a += xa as f64 * p;
            mean_b += xb as f64 * p;
        }
        (mean_a, mean_b)
    }

    pub fn distribution(&self) -> Vec<((i64, i64), f64)> {
        let mut keys: Vec<_> = self.probs.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter()
            .map(|k| (k, self.probs[&k].iter().sum::<f64>()))
            .filter(|(_, p)| *p > 0.0)
            .collect()
    }
}
