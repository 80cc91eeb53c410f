//! Exact classical iterated-game oracle.
//!
//! The joint coin history of a classical iterated 2x2 game is a Markov
//! chain on the four joint states CC, CD, DC, DD. This module builds the
//! transition matrix for a strategy pair and iterates it exactly, serving
//! as ground truth for the quantum engine's measured mode.

use crate::error::{Error, Result};
use crate::qstate::{CoinBasis, PayoffTable};
use crate::strategies::{ClassicalStrategy, Player};

/// Who reacts when within a round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveOrder {
    /// Both players react to the previous joint state independently.
    Simultaneous,
    /// Alice reacts first; Bob reacts to (Alice's new move, Bob's old move).
    AliceFirst,
    /// Bob reacts first; Alice reacts to (Alice's old move, Bob's new move).
    BobFirst,
}

/// A probability distribution over the four joint coin states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointCoinDistribution {
    probs: [f64; 4],
}

impl JointCoinDistribution {
    pub fn new(probs: [f64; 4]) -> Result<Self> {
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|p| *p < 0.0 || !p.is_finite()) {
            return Err(Error::InvalidProbability {
                what: "joint coin distribution entry",
                value: *probs.iter().find(|p| **p < 0.0 || !p.is_finite()).unwrap(),
            });
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized {
                deviation: (sum - 1.0).abs(),
            });
        }
        Ok(JointCoinDistribution { probs })
    }

    /// All mass on one joint state.
    pub fn certain(c: CoinBasis) -> Self {
        let mut probs = [0.0; 4];
        probs[c.index()] = 1.0;
        JointCoinDistribution { probs }
    }

    /// Both players play C with independent probability 1/2: 1/4 on each
    /// joint state.
    pub fn uniform() -> Self {
        JointCoinDistribution { probs: [0.25; 4] }
    }

    /// The correlated even mixture of CC and DD.
    pub fn half_cc_half_dd() -> Self {
        JointCoinDistribution {
            probs: [0.5, 0.0, 0.0, 0.5],
        }
    }

    pub fn probability(&self, c: CoinBasis) -> f64 {
        self.probs[c.index()]
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.probs
    }
}

/// Row-stochastic 4x4 matrix: entry `(from, to)` is the probability that
/// one round moves the joint state from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionMatrix {
    m: [[f64; 4]; 4],
}

impl TransitionMatrix {
    pub fn entry(&self, from: CoinBasis, to: CoinBasis) -> f64 {
        self.m[from.index()][to.index()]
    }

    pub fn matrix(&self) -> &[[f64; 4]; 4] {
        &self.m
    }

    pub fn propagate(&self, d: &JointCoinDistribution) -> JointCoinDistribution {
        let mut out = [0.0; 4];
        for (from, row) in self.m.iter().enumerate() {
            for (to, p) in row.iter().enumerate() {
                out[to] += d.probs[from] * p;
            }
        }
        JointCoinDistribution { probs: out }
    }
}

/// Build the one-round transition matrix for a classical strategy pair.
///
/// In the sequential orders the second mover reacts to the intermediate
/// state (the first mover's new move alongside the second mover's old
/// one), interpreted through the payoff map — mirroring how the second
/// unitary in a sequential quantum game sees the coin after the first.
pub fn classical_transition_matrix(
    strat_a: &ClassicalStrategy,
    strat_b: &ClassicalStrategy,
    order: MoveOrder,
) -> TransitionMatrix {
    let mut m = [[0.0; 4]; 4];
    for from in CoinBasis::ALL {
        for to in CoinBasis::ALL {
            let a_new = to.alice_defects();
            let b_new = to.bob_defects();
            m[from.index()][to.index()] = match order {
                MoveOrder::Simultaneous => {
                    strat_a.move_probability(Player::A.payoff_at(from), a_new)
                        * strat_b.move_probability(Player::B.payoff_at(from), b_new)
                }
                MoveOrder::AliceFirst => {
                    let mid = CoinBasis::from_bits(a_new, from.bob_defects());
                    strat_a.move_probability(Player::A.payoff_at(from), a_new)
                        * strat_b.move_probability(Player::B.payoff_at(mid), b_new)
                }
                MoveOrder::BobFirst => {
                    let mid = CoinBasis::from_bits(from.alice_defects(), b_new);
                    strat_b.move_probability(Player::B.payoff_at(from), b_new)
                        * strat_a.move_probability(Player::A.payoff_at(mid), a_new)
                }
            };
        }
    }
    TransitionMatrix { m }
}

/// Expected cumulative payoffs after `steps` rounds, by exact
/// matrix-vector iteration. Payoff accrues on the post-move joint state
/// each round, matching the quantum engine where the shift follows the
/// coin operation.
pub fn classical_expected_payoffs(
    strat_a: &ClassicalStrategy,
    strat_b: &ClassicalStrategy,
    initial: &JointCoinDistribution,
    steps: u32,
    payoffs: &PayoffTable,
    order: MoveOrder,
) -> (f64, f64) {
    let t = classical_transition_matrix(strat_a, strat_b, order);
    let mut d = *initial;
    let mut total_a = 0.0;
    let mut total_b = 0.0;
    for _ in 0..steps {
        d = t.propagate(&d);
        for c in CoinBasis::ALL {
            let p = d.probability(c);
            total_a += p * payoffs.alice_step(c) as f64;
            total_b += p * payoffs.bob_step(c) as f64;
        }
    }
    (total_a, total_b)
}
