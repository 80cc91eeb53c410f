//! Construction, validation, composition, and classification of the
//! two-qubit coin operators that encode player strategies.
//!
//! A classical conditional strategy is four probabilities of cooperating
//! after each of the four payoffs. Its quantum embeddings are unitaries
//! acting on the player's own coin qubit, conditioned on the joint coin.
//! Not every classical strategy embeds: sequential play requires the
//! row-sum constraint `p_R + p_T = p_S + p_P = 1`, and simultaneous play
//! has its own compatibility conditions between the two players.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::{unitarity_defect, CoinBasis, CoinOperator, Payoff};

/// Tolerance for the probability-sum constraints of strategy embeddings.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-9;

/// One of the two agents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    /// Alice — owns the first coin qubit.
    A,
    /// Bob — owns the second coin qubit.
    B,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::A => Player::B,
            Player::B => Player::A,
        }
    }

    /// The payoff this player received given the previous joint coin state.
    pub fn payoff_at(self, c: CoinBasis) -> Payoff {
        match self {
            Player::A => c.alice_payoff(),
            Player::B => c.bob_payoff(),
        }
    }

    fn own_bit(self, c: CoinBasis) -> bool {
        match self {
            Player::A => c.alice_defects(),
            Player::B => c.bob_defects(),
        }
    }

    fn replace_own_bit(self, c: CoinBasis, defect: bool) -> CoinBasis {
        match self {
            Player::A => CoinBasis::from_bits(defect, c.bob_defects()),
            Player::B => CoinBasis::from_bits(c.alice_defects(), defect),
        }
    }
}

/// A classical conditional strategy: the probability of cooperating after
/// receiving each of the four payoffs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalStrategy {
    cooperate_after: [f64; 4],
}

impl ClassicalStrategy {
    /// Probabilities of cooperating after Reward, Sucker, Temptation and
    /// Punishment, in that order.
    pub fn new(reward: f64, sucker: f64, temptation: f64, punishment: f64) -> Result<Self> {
        let cooperate_after = [reward, sucker, temptation, punishment];
        for (p, name) in cooperate_after.iter().zip(["p_R", "p_S", "p_T", "p_P"]) {
            if !(0.0..=1.0).contains(p) || !p.is_finite() {
                return Err(Error::InvalidProbability {
                    what: name,
                    value: *p,
                });
            }
        }
        Ok(ClassicalStrategy { cooperate_after })
    }

    /// Win-stay, lose-shift: `[1, 0, 0, 1]`.
    pub fn pavlov() -> Self {
        ClassicalStrategy {
            cooperate_after: [1.0, 0.0, 0.0, 1.0],
        }
    }

    /// Unbiased coin flip every round: `[1/2, 1/2, 1/2, 1/2]`.
    pub fn random() -> Self {
        ClassicalStrategy {
            cooperate_after: [0.5; 4],
        }
    }

    /// Tit-for-tat, copying the opponent's previous move: `[1, 0, 1, 0]`.
    pub fn tit_for_tat() -> Self {
        ClassicalStrategy {
            cooperate_after: [1.0, 0.0, 1.0, 0.0],
        }
    }

    pub fn always_cooperate() -> Self {
        ClassicalStrategy {
            cooperate_after: [1.0; 4],
        }
    }

    pub fn always_defect() -> Self {
        ClassicalStrategy {
            cooperate_after: [0.0; 4],
        }
    }

    /// The one-parameter family `[cos²ξ, sin²ξ, sin²ξ, cos²ξ]` that
    /// interpolates from Pavlov (ξ = 0) to Random (ξ = π/4).
    pub fn interpolated(xi: f64) -> Self {
        let c2 = xi.cos() * xi.cos();
        let s2 = xi.sin() * xi.sin();
        ClassicalStrategy {
            cooperate_after: [c2, s2, s2, c2],
        }
    }

    pub fn cooperate_after(&self, p: Payoff) -> f64 {
        self.cooperate_after[p.index()]
    }

    pub fn probabilities(&self) -> [f64; 4] {
        self.cooperate_after
    }

    /// Probability of choosing the given move (defect or cooperate) after
    /// the given payoff.
    pub fn move_probability(&self, after: Payoff, defect: bool) -> f64 {
        let coop = self.cooperate_after(after);
        if defect {
            1.0 - coop
        } else {
            coop
        }
    }

    /// The row-sum constraint a strategy must satisfy to have a unitary
    /// embedding in a sequential game: `p_R + p_T = 1` and `p_S + p_P = 1`.
    pub fn has_sequential_embedding(&self) -> bool {
        let [r, s, t, p] = self.cooperate_after;
        (r + t - 1.0).abs() <= CONSTRAINT_TOLERANCE && (s + p - 1.0).abs() <= CONSTRAINT_TOLERANCE
    }
}

/// Phase freedom of a sequential quantum strategy: one phase on the
/// cooperate amplitude and one on the defect amplitude, per payoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequentialPhases {
    /// Phases `φ_i` carried by the cooperate amplitudes `√p_i`.
    pub cooperate: [f64; 4],
    /// Phases `θ_i` carried by the defect amplitudes `√(1 - p_i)`.
    pub defect: [f64; 4],
}

impl SequentialPhases {
    pub fn zero() -> Self {
        SequentialPhases {
            cooperate: [0.0; 4],
            defect: [0.0; 4],
        }
    }

    /// A canonical admissible choice: all cooperate phases zero, defect
    /// phases picked so both block-orthogonality conditions hold
    /// (`θ_T = θ_R - π`, `θ_P = θ_S - π` with `θ_R = θ_S = 0`).
    pub fn canonical() -> Self {
        SequentialPhases {
            cooperate: [0.0; 4],
            defect: [0.0, 0.0, -std::f64::consts::PI, -std::f64::consts::PI],
        }
    }
}

/// The 16 phases of a simultaneous joint coin operator, indexed by
/// `[previous joint state][new joint state]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseMatrix(pub [[f64; 4]; 4]);

impl PhaseMatrix {
    pub fn zero() -> Self {
        PhaseMatrix([[0.0; 4]; 4])
    }
}

/// Which confrontation schemes a pair of classical strategies supports.
#[derive(Debug, Clone, PartialEq)]
pub struct Compatibility {
    pub sequential_ok: bool,
    pub simultaneous_ok: bool,
    pub reason: String,
}

fn phase(angle: f64) -> Complex64 {
    Complex64::new(angle.cos(), angle.sin())
}

/// Embed a classical strategy as a sequential quantum strategy for one
/// player. The operator acts on the player's own qubit only, with
/// amplitudes `e^{iφ_i}√p_i` (cooperate) and `e^{iθ_i}√(1-p_i)` (defect)
/// conditioned on the payoff the player just received.
///
/// Fails with [`Error::NotUnitary`] when the probabilities violate the
/// row-sum constraint or the phases violate block orthogonality; the
/// error names the constraint at fault.
pub fn sequential_from_classical(
    player: Player,
    probs: &ClassicalStrategy,
    phases: &SequentialPhases,
) -> Result<CoinOperator> {
    let [p_r, p_s, p_t, p_p] = probs.probabilities();
    if (p_r + p_t - 1.0).abs() > CONSTRAINT_TOLERANCE {
        return Err(Error::NotUnitary {
            detail: format!(
                "p_R + p_T = {} but a sequential strategy requires 1",
                p_r + p_t
            ),
        });
    }
    if (p_s + p_p - 1.0).abs() > CONSTRAINT_TOLERANCE {
        return Err(Error::NotUnitary {
            detail: format!(
                "p_S + p_P = {} but a sequential strategy requires 1",
                p_s + p_p
            ),
        });
    }

    let mut m = [[Complex64::ZERO; 4]; 4];
    for input in CoinBasis::ALL {
        let payoff = player.payoff_at(input);
        let p = probs.cooperate_after(payoff);
        let coop_amp = phase(phases.cooperate[payoff.index()]) * p.sqrt();
        let defect_amp = phase(phases.defect[payoff.index()]) * (1.0 - p).sqrt();
        let coop_row = player.replace_own_bit(input, false);
        let defect_row = player.replace_own_bit(input, true);
        m[coop_row.index()][input.index()] = coop_amp;
        m[defect_row.index()][input.index()] = defect_amp;
    }

    CoinOperator::new(m).map_err(|_| Error::NotUnitary {
        detail: sequential_phase_diagnostic(probs, phases),
    })
}

/// Name the block-orthogonality condition a bad phase choice violates.
/// When `0 < p_R < 1` the (R,T) block needs
/// `(φ_T - φ_R) - (θ_T - θ_R) ≡ π (mod 2π)`, and likewise for (S,P);
/// degenerate probabilities waive the corresponding condition.
fn sequential_phase_diagnostic(probs: &ClassicalStrategy, phases: &SequentialPhases) -> String {
    let mut failed = Vec::new();
    let two_pi = 2.0 * std::f64::consts::PI;
    for (first, second, label) in [
        (Payoff::Reward, Payoff::Temptation, "(R,T)"),
        (Payoff::Sucker, Payoff::Punishment, "(S,P)"),
    ] {
        let p = probs.cooperate_after(first);
        if p <= 0.0 || p >= 1.0 {
            continue;
        }
        let delta = (phases.cooperate[second.index()] - phases.cooperate[first.index()])
            - (phases.defect[second.index()] - phases.defect[first.index()]);
        let wrapped = (delta - std::f64::consts::PI).rem_euclid(two_pi);
        let off = wrapped.min(two_pi - wrapped);
        if off > 1e-9 {
            failed.push(format!(
                "{label} block: (φ_{1} - φ_{0}) - (θ_{1} - θ_{0}) differs from π by {off:.3e}",
                label.chars().nth(1).unwrap(),
                label.chars().nth(3).unwrap(),
            ));
        }
    }
    if failed.is_empty() {
        "assembled sequential operator failed the unitarity check".into()
    } else {
        failed.join("; ")
    }
}

/// Quantum Pavlov for either player, with its three free phases. At zero
/// phases this is a CNOT whose control is the opponent's coin.
pub fn pavlov(player: Player, nu1: f64, nu2: f64, nu3: f64) -> CoinOperator {
    let mut m = [[Complex64::ZERO; 4]; 4];
    m[CoinBasis::CC.index()][CoinBasis::CC.index()] = Complex64::ONE;
    match player {
        Player::A => {
            // |00⟩⟨00| + e^{iν1}|11⟩⟨01| + e^{iν2}|10⟩⟨10| + e^{iν3}|01⟩⟨11|
            m[CoinBasis::DD.index()][CoinBasis::CD.index()] = phase(nu1);
            m[CoinBasis::DC.index()][CoinBasis::DC.index()] = phase(nu2);
            m[CoinBasis::CD.index()][CoinBasis::DD.index()] = phase(nu3);
        }
        Player::B => {
            // |00⟩⟨00| + e^{iμ1}|01⟩⟨01| + e^{iμ2}|11⟩⟨10| + e^{iμ3}|10⟩⟨11|
            m[CoinBasis::CD.index()][CoinBasis::CD.index()] = phase(nu1);
            m[CoinBasis::DD.index()][CoinBasis::DC.index()] = phase(nu2);
            m[CoinBasis::DC.index()][CoinBasis::DD.index()] = phase(nu3);
        }
    }
    CoinOperator::new(m).expect("rephased permutation is unitary")
}

/// Hadamard on the player's own qubit — the quantum Random strategy.
pub fn random_hadamard(player: Player) -> CoinOperator {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut m = [[Complex64::ZERO; 4]; 4];
    for input in CoinBasis::ALL {
        for defect in [false, true] {
            let row = player.replace_own_bit(input, defect);
            let sign = if defect && player.own_bit(input) {
                -1.0
            } else {
                1.0
            };
            m[row.index()][input.index()] = h * sign;
        }
    }
    CoinOperator::new(m).expect("Hadamard is unitary")
}

/// The one-parameter strategy family on the restricted space
/// `p_R + p_S = 1`, with `cos²ξ = p_R`. Reduces to Pavlov (up to a sign
/// convention) at ξ = 0 and to the Hadamard Random strategy at ξ = π/4.
/// The real sign convention used here carries the minus signs on the
/// second column of each 2x2 rotation block.
///
/// Values of ξ outside `[0, π/4]` still produce a valid (orthogonal)
/// operator; range policing is left to the configuration layer.
pub fn interpolated(player: Player, xi: f64) -> CoinOperator {
    let cos = Complex64::new(xi.cos(), 0.0);
    let sin = Complex64::new(xi.sin(), 0.0);
    let z = Complex64::ZERO;
    let m = match player {
        // Columns ordered |00⟩,|01⟩,|10⟩,|11⟩; blocks (R,T) and (S,P).
        Player::A => [
            [cos, z, sin, z],
            [z, sin, z, cos],
            [sin, z, -cos, z],
            [z, cos, z, -sin],
        ],
        Player::B => [
            [cos, sin, z, z],
            [sin, -cos, z, z],
            [z, z, sin, cos],
            [z, z, cos, -sin],
        ],
    };
    CoinOperator::new(m).expect("rotation-reflection blocks are orthogonal")
}

/// Sequential composition: `first` acts first on states, so the matrix is
/// `second · first`.
pub fn compose_sequential(first: &CoinOperator, second: &CoinOperator) -> CoinOperator {
    second.matmul(first)
}

/// The payoff labels of the six unordered pairs of previous joint states,
/// as seen by each player; used by the simultaneous unitarity conditions.
const INPUT_PAIRS: [(CoinBasis, CoinBasis); 6] = [
    (CoinBasis::CC, CoinBasis::CD),
    (CoinBasis::CC, CoinBasis::DC),
    (CoinBasis::CC, CoinBasis::DD),
    (CoinBasis::CD, CoinBasis::DC),
    (CoinBasis::CD, CoinBasis::DD),
    (CoinBasis::DC, CoinBasis::DD),
];

/// Entry magnitudes of the simultaneous operator: `U[out][in]` has modulus
/// `√(q_A(a'|in) · q_B(b'|in))` where each factor is that player's
/// classical probability for their new move given their payoff at `in`.
fn simultaneous_moduli(a: &ClassicalStrategy, b: &ClassicalStrategy) -> [[f64; 4]; 4] {
    let mut m = [[0.0; 4]; 4];
    for input in CoinBasis::ALL {
        for output in CoinBasis::ALL {
            let qa = a.move_probability(Player::A.payoff_at(input), output.alice_defects());
            let qb = b.move_probability(Player::B.payoff_at(input), output.bob_defects());
            m[output.index()][input.index()] = (qa * qb).sqrt();
        }
    }
    m
}

/// Evaluate the six product conditions for a real simultaneous operator.
/// Each condition demands, for one pair of previous states, that at least
/// one player's two cooperation probabilities sum to 1. Returns the pairs
/// whose product exceeds the tolerance.
fn failed_product_conditions(a: &ClassicalStrategy, b: &ClassicalStrategy) -> Vec<String> {
    let mut failed = Vec::new();
    for (c1, c2) in INPUT_PAIRS {
        let fa = a.cooperate_after(Player::A.payoff_at(c1))
            + a.cooperate_after(Player::A.payoff_at(c2))
            - 1.0;
        let fb = b.cooperate_after(Player::B.payoff_at(c1))
            + b.cooperate_after(Player::B.payoff_at(c2))
            - 1.0;
        if (fa * fb).abs() > CONSTRAINT_TOLERANCE {
            failed.push(format!(
                "inputs {c1:?}/{c2:?}: (A sum - 1)(B sum - 1) = {:.3e}",
                fa * fb
            ));
        }
    }
    failed
}

/// Assemble the simultaneous joint operator for two classical strategies
/// with an explicit phase matrix, and verify unitarity numerically
/// (`|U†U - I| ≤ 1e-9` element-wise).
///
/// On failure the error reports which of the six real-case product
/// conditions fail, so the caller can tell a doomed pair from a bad phase
/// choice.
pub fn simultaneous_from_classical(
    a: &ClassicalStrategy,
    b: &ClassicalStrategy,
    phases: &PhaseMatrix,
) -> Result<CoinOperator> {
    let moduli = simultaneous_moduli(a, b);
    let mut m = [[Complex64::ZERO; 4]; 4];
    for input in CoinBasis::ALL {
        for output in CoinBasis::ALL {
            m[output.index()][input.index()] = phase(phases.0[input.index()][output.index()])
                * moduli[output.index()][input.index()];
        }
    }
    let defect = unitarity_defect(&m);
    if defect > 1e-9 {
        let failed = failed_product_conditions(a, b);
        let detail = if failed.is_empty() {
            format!(
                "matrix with the given phases is not unitary (defect {defect:.3e}); \
                 all six product conditions hold, so a different phase choice may work"
            )
        } else {
            format!(
                "matrix is not unitary (defect {defect:.3e}); failed conditions: {}",
                failed.join("; ")
            )
        };
        return Err(Error::NotUnitary { detail });
    }
    CoinOperator::new(m)
}

/// Find a canonical real simultaneous operator for a strategy pair by
/// searching sign patterns that factorize per player, each player's sign
/// depending only on their own previous and new move. This keeps the extra
/// quantum phase freedom local to each agent: a player's phase cannot leak
/// information about the opponent's previous move beyond what the payoff
/// already fixes in the amplitude magnitudes.
///
/// The search is deterministic (all-positive pattern first), so named
/// pairs always produce the same canonical operator — e.g. Pavlov/TFT
/// yields the plain 4-cycle permutation.
pub fn simultaneous_auto(a: &ClassicalStrategy, b: &ClassicalStrategy) -> Result<CoinOperator> {
    let moduli = simultaneous_moduli(a, b);
    for mask in 0u32..256 {
        let sign_a = |prev: bool, new: bool| -> f64 {
            let bit = (prev as u32) << 1 | new as u32;
            if mask >> bit & 1 == 1 {
                -1.0
            } else {
                1.0
            }
        };
        let sign_b = |prev: bool, new: bool| -> f64 {
            let bit = 4 + ((prev as u32) << 1 | new as u32);
            if mask >> bit & 1 == 1 {
                -1.0
            } else {
                1.0
            }
        };
        let mut m = [[Complex64::ZERO; 4]; 4];
        for input in CoinBasis::ALL {
            for output in CoinBasis::ALL {
                let s = sign_a(input.alice_defects(), output.alice_defects())
                    * sign_b(input.bob_defects(), output.bob_defects());
                m[output.index()][input.index()] =
                    Complex64::new(s * moduli[output.index()][input.index()], 0.0);
            }
        }
        if unitarity_defect(&m) <= 1e-9 {
            return CoinOperator::new(m);
        }
    }
    let failed = failed_product_conditions(a, b);
    let detail = if failed.is_empty() {
        "no admissible player-local sign pattern exists for this pair, although all six \
         product conditions hold"
            .to_string()
    } else {
        format!("failed conditions: {}", failed.join("; "))
    };
    Err(Error::NotUnitary { detail })
}

/// The Pavlov-vs-TFT simultaneous operator
/// `|00⟩⟨00| + e^{iλ1}|10⟩⟨01| + e^{iλ2}|11⟩⟨10| + e^{iλ3}|01⟩⟨11|`.
pub fn pavlov_tft(lambda1: f64, lambda2: f64, lambda3: f64) -> CoinOperator {
    let mut m = [[Complex64::ZERO; 4]; 4];
    m[CoinBasis::CC.index()][CoinBasis::CC.index()] = Complex64::ONE;
    m[CoinBasis::DC.index()][CoinBasis::CD.index()] = phase(lambda1);
    m[CoinBasis::DD.index()][CoinBasis::DC.index()] = phase(lambda2);
    m[CoinBasis::CD.index()][CoinBasis::DD.index()] = phase(lambda3);
    CoinOperator::new(m).expect("rephased permutation is unitary")
}

/// Element-wise unitarity test: `max |m†m - I| ≤ tol`.
pub fn is_unitary(m: &[[Complex64; 4]; 4], tol: f64) -> bool {
    unitarity_defect(m) <= tol
}

/// True when the operator never alters the opponent's qubit: every matrix
/// element connecting different opponent-bit values vanishes within `tol`.
pub fn acts_only_on(op: &CoinOperator, player: Player, tol: f64) -> bool {
    for row in CoinBasis::ALL {
        for col in CoinBasis::ALL {
            let opponent_changed = match player {
                Player::A => row.bob_defects() != col.bob_defects(),
                Player::B => row.alice_defects() != col.alice_defects(),
            };
            if opponent_changed && op.entry(row, col).norm() > tol {
                return false;
            }
        }
    }
    true
}

/// Which schemes (sequential, simultaneous) can confront this classical
/// strategy pair, with a human-readable reason.
pub fn compatibility(a: &ClassicalStrategy, b: &ClassicalStrategy) -> Compatibility {
    let seq_a = a.has_sequential_embedding();
    let seq_b = b.has_sequential_embedding();
    let sequential_ok = seq_a && seq_b;
    let sim = simultaneous_auto(a, b);
    let simultaneous_ok = sim.is_ok();

    let mut parts = Vec::new();
    if sequential_ok {
        parts.push("sequential: both strategies satisfy p_R + p_T = p_S + p_P = 1".to_string());
    } else {
        let who = match (seq_a, seq_b) {
            (false, false) => "both strategies violate",
            (false, true) => "player A's strategy violates",
            _ => "player B's strategy violates",
        };
        parts.push(format!("sequential: {who} p_R + p_T = p_S + p_P = 1"));
    }
    match sim {
        Ok(_) => parts.push("simultaneous: admissible real operator found".to_string()),
        Err(Error::NotUnitary { detail }) => parts.push(format!("simultaneous: {detail}")),
        Err(e) => parts.push(format!("simultaneous: {e}")),
    }

    Compatibility {
        sequential_ok,
        simultaneous_ok,
        reason: parts.join("; "),
    }
}
