//! Joint two-walker quantum state and its unitary evolution.
//!
//! The state of the game lives in `H_x ⊗ H_x ⊗ H_c`, where each walker
//! carries an integer position (its accumulated payoff) and a coin qubit
//! (its last move: `|0⟩` cooperate, `|1⟩` defect). One round of play is a
//! coin operation followed by a conditional shift whose step sizes are the
//! payoff-table entries. Amplitudes are stored sparsely, keyed by the pair
//! of integer positions, so memory stays proportional to the number of
//! occupied sites rather than to the square of the walk's range.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for rejecting unnormalized input states.
pub const NORM_TOLERANCE: f64 = 1e-8;

/// Element-wise tolerance on `U†U - I` enforced when constructing operators.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

/// Sites whose probability drops below this are removed after each step.
/// Purely a numerical-noise control; documented so that reproductions of
/// published numbers can match bit for bit.
pub const PRUNE_PROBABILITY: f64 = 1e-30;

/// Basis state of the joint two-qubit coin. The first bit is Alice's,
/// the second is Bob's; bit 0 means cooperate (C), bit 1 defect (D).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(usize)]
pub enum CoinBasis {
    /// `|00⟩` — both cooperated.
    CC = 0,
    /// `|01⟩` — Alice cooperated, Bob defected.
    CD = 1,
    /// `|10⟩` — Alice defected, Bob cooperated.
    DC = 2,
    /// `|11⟩` — both defected.
    DD = 3,
}

impl CoinBasis {
    pub const ALL: [CoinBasis; 4] = [CoinBasis::CC, CoinBasis::CD, CoinBasis::DC, CoinBasis::DD];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> CoinBasis {
        Self::ALL[i]
    }

    pub fn from_bits(alice_defects: bool, bob_defects: bool) -> CoinBasis {
        Self::from_index((alice_defects as usize) << 1 | bob_defects as usize)
    }

    pub fn alice_defects(self) -> bool {
        self.index() & 0b10 != 0
    }

    pub fn bob_defects(self) -> bool {
        self.index() & 0b01 != 0
    }

    /// Payoff Alice received when the previous round ended in this state.
    pub fn alice_payoff(self) -> Payoff {
        match self {
            CoinBasis::CC => Payoff::Reward,
            CoinBasis::CD => Payoff::Sucker,
            CoinBasis::DC => Payoff::Temptation,
            CoinBasis::DD => Payoff::Punishment,
        }
    }

    /// Payoff Bob received; the mixed outcomes swap relative to Alice's.
    pub fn bob_payoff(self) -> Payoff {
        match self {
            CoinBasis::CC => Payoff::Reward,
            CoinBasis::CD => Payoff::Temptation,
            CoinBasis::DC => Payoff::Sucker,
            CoinBasis::DD => Payoff::Punishment,
        }
    }
}

/// The four outcomes of a 2x2 cooperation/defection round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(usize)]
pub enum Payoff {
    Reward = 0,
    Sucker = 1,
    Temptation = 2,
    Punishment = 3,
}

impl Payoff {
    pub const ALL: [Payoff; 4] = [
        Payoff::Reward,
        Payoff::Sucker,
        Payoff::Temptation,
        Payoff::Punishment,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Normalized state of the joint two-qubit coin.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinState {
    amps: [Complex64; 4],
}

impl CoinState {
    /// Build a coin state from four amplitudes, rejecting inputs whose
    /// squared norm deviates from 1 by more than [`NORM_TOLERANCE`].
    pub fn new(amps: [Complex64; 4]) -> Result<CoinState> {
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let deviation = (norm_sqr - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(CoinState { amps })
    }

    /// The computational basis state `|c⟩`.
    pub fn basis(c: CoinBasis) -> CoinState {
        let mut amps = [Complex64::ZERO; 4];
        amps[c.index()] = Complex64::ONE;
        CoinState { amps }
    }

    /// `(|00⟩ + |11⟩)/√2`.
    pub fn bell_phi_plus() -> CoinState {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        CoinState {
            amps: [h, Complex64::ZERO, Complex64::ZERO, h],
        }
    }

    /// `(|01⟩ + |10⟩)/√2`.
    pub fn bell_psi_plus() -> CoinState {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        CoinState {
            amps: [Complex64::ZERO, h, h, Complex64::ZERO],
        }
    }

    /// The unbiased product state `(|00⟩ + i|01⟩ + i|10⟩ - |11⟩)/2`,
    /// i.e. `[(|0⟩ + i|1⟩)/√2]^⊗2`.
    pub fn unbiased_product() -> CoinState {
        let half = Complex64::new(0.5, 0.0);
        let ihalf = Complex64::new(0.0, 0.5);
        CoinState {
            amps: [half, ihalf, ihalf, -half],
        }
    }

    pub fn amps(&self) -> &[Complex64; 4] {
        &self.amps
    }

    pub fn amp(&self, c: CoinBasis) -> Complex64 {
        self.amps[c.index()]
    }
}

/// A 4x4 unitary on the joint coin space; one round's strategic content.
/// Row/column order follows [`CoinBasis`]. Construction enforces
/// `U†U = I` to [`UNITARITY_TOLERANCE`], element-wise.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinOperator {
    m: [[Complex64; 4]; 4],
}

impl CoinOperator {
    pub fn new(m: [[Complex64; 4]; 4]) -> Result<CoinOperator> {
        let defect = unitarity_defect(&m);
        if defect > UNITARITY_TOLERANCE {
            return Err(Error::NotUnitary {
                detail: format!(
                    "max |U†U - I| element = {defect:.3e} exceeds {UNITARITY_TOLERANCE:.0e}"
                ),
            });
        }
        Ok(CoinOperator { m })
    }

    pub fn identity() -> CoinOperator {
        let mut m = [[Complex64::ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex64::ONE;
        }
        CoinOperator { m }
    }

    /// Matrix element `⟨row|U|col⟩`.
    pub fn entry(&self, row: CoinBasis, col: CoinBasis) -> Complex64 {
        self.m[row.index()][col.index()]
    }

    pub fn matrix(&self) -> &[[Complex64; 4]; 4] {
        &self.m
    }

    /// Apply to a coin 4-vector.
    pub fn apply_vec(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [Complex64::ZERO; 4];
        for (row, out_slot) in out.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for (col, amp) in v.iter().enumerate() {
                acc += self.m[row][col] * amp;
            }
            *out_slot = acc;
        }
        out
    }

    /// The matrix product `self · other` (so `other` acts first on kets).
    pub fn matmul(&self, other: &CoinOperator) -> CoinOperator {
        CoinOperator {
            m: mat_mul(&self.m, &other.m),
        }
    }

    pub fn apply_coin_state(&self, coin: &CoinState) -> CoinState {
        CoinState {
            amps: self.apply_vec(coin.amps()),
        }
    }
}

/// `a · b` for raw 4x4 complex matrices.
pub(crate) fn mat_mul(a: &[[Complex64; 4]; 4], b: &[[Complex64; 4]; 4]) -> [[Complex64; 4]; 4] {
    let mut out = [[Complex64::ZERO; 4]; 4];
    for (i, out_row) in out.iter_mut().enumerate() {
        for (j, slot) in out_row.iter_mut().enumerate() {
            let mut acc = Complex64::ZERO;
            for (k, b_row) in b.iter().enumerate() {
                acc += a[i][k] * b_row[j];
            }
            *slot = acc;
        }
    }
    out
}

/// Max element of `|m†m - I|`; zero for an exactly unitary matrix.
pub(crate) fn unitarity_defect(m: &[[Complex64; 4]; 4]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = Complex64::ZERO;
            for row in m.iter() {
                acc += row[i].conj() * row[j];
            }
            let target = if i == j {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            worst = worst.max((acc - target).norm());
        }
    }
    worst
}

/// Classification of a payoff table by the ordering of its entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameClass {
    /// `T > R > P > S`.
    PrisonersDilemma,
    /// `T > R > S > P`.
    HawkDove,
    /// `R > T > P > S`.
    StagHunt,
    Other,
}

/// The four per-round payoffs. These integers double as the lattice step
/// sizes of the conditional shift, which is how positions come to store
/// accumulated payoffs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct PayoffTable {
    pub reward: i64,
    pub sucker: i64,
    pub temptation: i64,
    pub punishment: i64,
}

impl PayoffTable {
    pub fn new(reward: i64, sucker: i64, temptation: i64, punishment: i64) -> PayoffTable {
        PayoffTable {
            reward,
            sucker,
            temptation,
            punishment,
        }
    }

    /// The default Prisoner's Dilemma values `R = -P = 1`, `T = -S = 2`.
    pub fn pd_default() -> PayoffTable {
        PayoffTable::new(1, -2, 2, -1)
    }

    /// A Hawk-Dove ordering (`T > R > S > P`) with the same magnitudes.
    pub fn hawk_dove_default() -> PayoffTable {
        PayoffTable::new(1, -1, 2, -2)
    }

    /// A Stag Hunt ordering (`R > T > P > S`) with the same magnitudes.
    pub fn stag_hunt_default() -> PayoffTable {
        PayoffTable::new(2, -2, 1, -1)
    }

    pub fn value(&self, p: Payoff) -> i64 {
        match p {
            Payoff::Reward => self.reward,
            Payoff::Sucker => self.sucker,
            Payoff::Temptation => self.temptation,
            Payoff::Punishment => self.punishment,
        }
    }

    /// The game class is derived from the ordering, never stored.
    pub fn game_class(&self) -> GameClass {
        let (r, s, t, p) = (self.reward, self.sucker, self.temptation, self.punishment);
        if t > r && r > p && p > s {
            GameClass::PrisonersDilemma
        } else if t > r && r > s && s > p {
            GameClass::HawkDove
        } else if r > t && t > p && p > s {
            GameClass::StagHunt
        } else {
            GameClass::Other
        }
    }

    /// Alice's step size for a given joint coin state.
    pub fn alice_step(&self, c: CoinBasis) -> i64 {
        self.value(c.alice_payoff())
    }

    /// Bob's step size for a given joint coin state.
    pub fn bob_step(&self, c: CoinBasis) -> i64 {
        self.value(c.bob_payoff())
    }

    pub fn min_step(&self) -> i64 {
        self.reward
            .min(self.sucker)
            .min(self.temptation)
            .min(self.punishment)
    }

    pub fn max_step(&self) -> i64 {
        self.reward
            .max(self.sucker)
            .max(self.temptation)
            .max(self.punishment)
    }

    /// True when the conditional shift factorizes into independent
    /// single-walker shifts, i.e. each walker's step depends only on its
    /// own coin bit. That requires `R = S` and `T = P`; any table with the
    /// Prisoner's Dilemma ordering violates it, which is exactly what makes
    /// the shift entangle the players.
    pub fn separable_shift(&self) -> bool {
        self.reward == self.sucker && self.temptation == self.punishment
    }
}

/// Sparse normalized wavefunction over `(x_A, x_B, joint coin)`.
///
/// Values are immutable: every evolution method returns a new state.
#[derive(Debug, Clone)]
pub struct JointState {
    amps: HashMap<(i64, i64), [Complex64; 4]>,
}

impl JointState {
    /// Both walkers start at the origin carrying the given coin state.
    pub fn from_coin(coin: &CoinState) -> Result<JointState> {
        let norm_sqr: f64 = coin.amps().iter().map(|a| a.norm_sqr()).sum();
        let deviation = (norm_sqr - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            return Err(Error::NotNormalized { deviation });
        }
        let mut amps = HashMap::new();
        amps.insert((0, 0), *coin.amps());
        Ok(JointState { amps })
    }

    /// Number of occupied position pairs.
    pub fn occupied_sites(&self) -> usize {
        self.amps.len()
    }

    /// Coin amplitudes at a site; zeros if the site is unoccupied.
    pub fn site(&self, x_a: i64, x_b: i64) -> [Complex64; 4] {
        self.amps
            .get(&(x_a, x_b))
            .copied()
            .unwrap_or([Complex64::ZERO; 4])
    }

    pub fn norm_sqr(&self) -> f64 {
        // Summation over sorted sites keeps the result bit-reproducible
        // regardless of hash-map layout.
        self.sorted_sites()
            .iter()
            .map(|k| self.amps[k].iter().map(|a| a.norm_sqr()).sum::<f64>())
            .sum()
    }

    fn sorted_sites(&self) -> Vec<(i64, i64)> {
        let mut keys: Vec<_> = self.amps.keys().copied().collect();
        keys.sort_unstable();
        keys
    }

    /// Apply a coin operator at every occupied site; positions untouched.
    pub fn apply_coin(&self, op: &CoinOperator) -> JointState {
        let mut amps = self.amps.clone();
        for v in amps.values_mut() {
            *v = op.apply_vec(v);
        }
        JointState { amps }
    }

    /// Conditional shift: each coin component translates both positions by
    /// that component's payoff pair. A permutation of (site, coin) slots,
    /// so every amplitude modulus is preserved exactly.
    pub fn apply_shift(&self, payoffs: &PayoffTable) -> JointState {
        let steps: [(i64, i64); 4] = [
            (
                payoffs.alice_step(CoinBasis::CC),
                payoffs.bob_step(CoinBasis::CC),
            ),
            (
                payoffs.alice_step(CoinBasis::CD),
                payoffs.bob_step(CoinBasis::CD),
            ),
            (
                payoffs.alice_step(CoinBasis::DC),
                payoffs.bob_step(CoinBasis::DC),
            ),
            (
                payoffs.alice_step(CoinBasis::DD),
                payoffs.bob_step(CoinBasis::DD),
            ),
        ];
        let mut amps: HashMap<(i64, i64), [Complex64; 4]> =
            HashMap::with_capacity(self.amps.len() * 2);
        for (&(xa, xb), v) in &self.amps {
            for (c, &(da, db)) in steps.iter().enumerate() {
                if v[c] != Complex64::ZERO {
                    amps.entry((xa + da, xb + db))
                        .or_insert([Complex64::ZERO; 4])[c] = v[c];
                }
            }
        }
        JointState { amps }
    }

    /// One round: coin operation, then conditional shift, then pruning of
    /// sites below [`PRUNE_PROBABILITY`].
    pub fn step(&self, op: &CoinOperator, payoffs: &PayoffTable) -> JointState {
        let mut next = self.apply_coin(op).apply_shift(payoffs);
        next.amps
            .retain(|_, v| v.iter().map(|a| a.norm_sqr()).sum::<f64>() >= PRUNE_PROBABILITY);
        next
    }

    /// Mean positions `(x̄_A, x̄_B)` — the players' average payoffs.
    pub fn payoff_means(&self) -> (f64, f64) {
        let mut mean_a = 0.0;
        let mut mean_b = 0.0;
        for (xa, xb) in self.sorted_sites() {
            let p: f64 = self.amps[&(xa, xb)].iter().map(|a| a.norm_sqr()).sum();
            mean_a += xa as f64 * p;
            mean_b += xb as f64 * p;
        }
        (mean_a, mean_b)
    }

    /// Position distribution, sorted by site, zero-probability sites omitted.
    pub fn payoff_distribution(&self) -> Vec<((i64, i64), f64)> {
        let mut out = Vec::with_capacity(self.amps.len());
        for site in self.sorted_sites() {
            let p: f64 = self.amps[&site].iter().map(|a| a.norm_sqr()).sum();
            if p > 0.0 {
                out.push((site, p));
            }
        }
        out
    }

    /// Reduced density matrix of the joint coin (positions traced out).
    pub fn reduced_coin_density(&self) -> DensityMatrix4 {
        let mut m = [[Complex64::ZERO; 4]; 4];
        for site in self.sorted_sites() {
            let v = &self.amps[&site];
            for (i, row) in m.iter_mut().enumerate() {
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot += v[i] * v[j].conj();
                }
            }
        }
        DensityMatrix4 { m }
    }

    /// Entropy of entanglement, in bits, across the agent-wise cut:
    /// subsystem A is `(x_A, Alice's coin bit)`, subsystem B is
    /// `(x_B, Bob's coin bit)`. Computed from the Schmidt spectrum of the
    /// amplitude matrix reshaped to (A-index × B-index).
    pub fn entanglement_entropy(&self) -> f64 {
        let sites = self.sorted_sites();
        if sites.is_empty() {
            return 0.0;
        }
        let mut xs_a: Vec<i64> = sites.iter().map(|&(a, _)| a).collect();
        xs_a.dedup();
        xs_a.sort_unstable();
        xs_a.dedup();
        let mut xs_b: Vec<i64> = sites.iter().map(|&(_, b)| b).collect();
        xs_b.sort_unstable();
        xs_b.dedup();
        let index_a: HashMap<i64, usize> = xs_a.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let index_b: HashMap<i64, usize> = xs_b.iter().enumerate().map(|(i, &x)| (x, i)).collect();

        let dim_a = 2 * xs_a.len();
        let dim_b = 2 * xs_b.len();
        let mut m = DMatrix::<Complex64>::zeros(dim_a, dim_b);
        for &(xa, xb) in &sites {
            let v = &self.amps[&(xa, xb)];
            let ia = index_a[&xa];
            let ib = index_b[&xb];
            for c in CoinBasis::ALL {
                let row = 2 * ia + c.alice_defects() as usize;
                let col = 2 * ib + c.bob_defects() as usize;
                m[(row, col)] = v[c.index()];
            }
        }

        // Schmidt coefficients squared = eigenvalues of the smaller Gram
        // matrix; a Hermitian eigensolve is more robust here than a full SVD.
        let gram = if dim_a <= dim_b {
            &m * m.adjoint()
        } else {
            m.adjoint() * &m
        };
        let eigs = gram.symmetric_eigen().eigenvalues;
        let mut entropy = 0.0;
        for &lambda in eigs.iter() {
            if lambda > 0.0 {
                entropy -= lambda * lambda.log2();
            }
        }
        entropy.max(0.0)
    }
}

/// 4x4 Hermitian, unit-trace reduced state of the joint coin.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4 {
    m: [[Complex64; 4]; 4],
}

impl DensityMatrix4 {
    /// Validates Hermiticity and unit trace to 1e-12 and positivity of the
    /// spectrum to -1e-10.
    pub fn new(m: [[Complex64; 4]; 4]) -> Result<DensityMatrix4> {
        for (i, row) in m.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if (cell - m[j][i].conj()).norm() > 1e-12 {
                    return Err(Error::InvalidConfig(format!(
                        "density matrix not Hermitian at ({i},{j})"
                    )));
                }
            }
        }
        let trace: Complex64 = (0..4).map(|i| m[i][i]).sum();
        if (trace - Complex64::ONE).norm() > 1e-12 {
            return Err(Error::InvalidConfig(format!(
                "density matrix trace {trace} is not 1"
            )));
        }
        let dm = DensityMatrix4 { m };
        if dm.eigenvalues().iter().any(|&l| l < -1e-10) {
            return Err(Error::InvalidConfig(
                "density matrix has a negative eigenvalue".into(),
            ));
        }
        Ok(dm)
    }

    pub fn entry(&self, row: CoinBasis, col: CoinBasis) -> Complex64 {
        self.m[row.index()][col.index()]
    }

    pub fn matrix(&self) -> &[[Complex64; 4]; 4] {
        &self.m
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.m[i][i]).sum()
    }

    /// Eigenvalues in nalgebra's order (real, since the matrix is Hermitian).
    pub fn eigenvalues(&self) -> Vec<f64> {
        let m = DMatrix::from_fn(4, 4, |i, j| self.m[i][j]);
        m.symmetric_eigen().eigenvalues.iter().copied().collect()
    }

    /// Reduced density matrix of Alice's qubit (Bob's traced out).
    pub fn alice_qubit(&self) -> [[Complex64; 2]; 2] {
        let mut out = [[Complex64::ZERO; 2]; 2];
        for (a, row) in out.iter_mut().enumerate() {
            for (a2, slot) in row.iter_mut().enumerate() {
                for b in 0..2 {
                    *slot += self.m[2 * a + b][2 * a2 + b];
                }
            }
        }
        out
    }

    /// Von Neumann entropy (bits) of Alice's reduced qubit.
    pub fn alice_qubit_entropy(&self) -> f64 {
        let q = self.alice_qubit();
        // 2x2 Hermitian eigenvalues in closed form.
        let half_trace = 0.5 * (q[0][0].re + q[1][1].re);
        let det = (q[0][0] * q[1][1] - q[0][1] * q[1][0]).re;
        let disc = (half_trace * half_trace - det).max(0.0).sqrt();
        let mut entropy = 0.0;
        for lambda in [half_trace + disc, half_trace - disc] {
            if lambda > 0.0 {
                entropy -= lambda * lambda.log2();
            }
        }
        entropy.max(0.0)
    }
}
