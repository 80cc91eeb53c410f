//! Shared test infrastructure: an independent dense reference evolution,
//! a brute-force assembled step matrix, and a tiny deterministic RNG.
//!
//! Everything here deliberately avoids the sparse engine's code paths:
//! the dense state is a flat array indexed by arithmetic, the coin
//! application and shift are hand-rolled loops, and the step matrix is
//! assembled element by element. Agreement between the two routes is the
//! point of the exercise.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;

use qwalk_games::qstate::{CoinBasis, CoinOperator, CoinState, JointState, PayoffTable};

/// Dense wavefunction over a clipped window `x ∈ [-half, half]` per axis.
pub struct DenseState {
    half_a: i64,
    half_b: i64,
    width_b: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    pub fn from_coin(coin: &CoinState, half_a: i64, half_b: i64) -> DenseState {
        let width_a = (2 * half_a + 1) as usize;
        let width_b = (2 * half_b + 1) as usize;
        let mut amps = vec![Complex64::ZERO; width_a * width_b * 4];
        let mut state = DenseState {
            half_a,
            half_b,
            width_b,
            amps: Vec::new(),
        };
        let origin = state.index_of(0, 0, 0);
        for (c, &a) in coin.amps().iter().enumerate() {
            amps[origin + c] = a;
        }
        state.amps = amps;
        state
    }

    fn index_of(&self, xa: i64, xb: i64, c: usize) -> usize {
        let ia = (xa + self.half_a) as usize;
        let ib = (xb + self.half_b) as usize;
        (ia * self.width_b + ib) * 4 + c
    }

    pub fn amp(&self, xa: i64, xb: i64, c: usize) -> Complex64 {
        if xa.abs() > self.half_a || xb.abs() > self.half_b {
            return Complex64::ZERO;
        }
        self.amps[self.index_of(xa, xb, c)]
    }

    /// One round: 4x4 coin matvec at every site, then a conditional
    /// translation. Panics if probability would leave the window.
    pub fn step(&mut self, op: &CoinOperator, payoffs: &PayoffTable) {
        let m = op.matrix();
        for chunk in self.amps.chunks_exact_mut(4) {
            let mut out = [Complex64::ZERO; 4];
            for (row, slot) in out.iter_mut().enumerate() {
                for (col, amp) in chunk.iter().enumerate() {
                    *slot += m[row][col] * *amp;
                }
            }
            chunk.copy_from_slice(&out);
        }

        let steps: Vec<(i64, i64)> = CoinBasis::ALL
            .iter()
            .map(|&c| (payoffs.alice_step(c), payoffs.bob_step(c)))
            .collect();
        let mut next = vec![Complex64::ZERO; self.amps.len()];
        for xa in -self.half_a..=self.half_a {
            for xb in -self.half_b..=self.half_b {
                for (c, &(da, db)) in steps.iter().enumerate() {
                    let a = self.amps[self.index_of(xa, xb, c)];
                    if a == Complex64::ZERO {
                        continue;
                    }
                    let (ta, tb) = (xa + da, xb + db);
                    assert!(
                        ta.abs() <= self.half_a && tb.abs() <= self.half_b,
                        "dense window too small: amplitude at ({xa},{xb}) coin {c}"
                    );
                    next[self.index_of(ta, tb, c)] = a;
                }
            }
        }
        self.amps = next;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn payoff_means(&self) -> (f64, f64) {
        let mut mean_a = 0.0;
        let mut mean_b = 0.0;
        for xa in -self.half_a..=self.half_a {
            for xb in -self.half_b..=self.half_b {
                let p: f64 = (0..4)
                    .map(|c| self.amps[self.index_of(xa, xb, c)].norm_sqr())
                    .sum();
                mean_a += xa as f64 * p;
                mean_b += xb as f64 * p;
            }
        }
        (mean_a, mean_b)
    }

    pub fn reduced_coin_density(&self) -> [[Complex64; 4]; 4] {
        let mut rho = [[Complex64::ZERO; 4]; 4];
        for chunk in self.amps.chunks_exact(4) {
            for i in 0..4 {
                for j in 0..4 {
                    rho[i][j] += chunk[i] * chunk[j].conj();
                }
            }
        }
        rho
    }

    /// Entanglement entropy in bits across the (x_A, coin_A) | (x_B,
    /// coin_B) cut, from the occupied sub-block of the window.
    pub fn entropy_bits(&self) -> f64 {
        let mut occ_a = Vec::new();
        for xa in -self.half_a..=self.half_a {
            let norm: f64 = (-self.half_b..=self.half_b)
                .flat_map(|xb| (0..4).map(move |c| (xb, c)))
                .map(|(xb, c)| self.amps[self.index_of(xa, xb, c)].norm_sqr())
                .sum();
            if norm > 0.0 {
                occ_a.push(xa);
            }
        }
        let mut occ_b = Vec::new();
        for xb in -self.half_b..=self.half_b {
            let norm: f64 = (-self.half_a..=self.half_a)
                .flat_map(|xa| (0..4).map(move |c| (xa, c)))
                .map(|(xa, c)| self.amps[self.index_of(xa, xb, c)].norm_sqr())
                .sum();
            if norm > 0.0 {
                occ_b.push(xb);
            }
        }
        if occ_a.is_empty() || occ_b.is_empty() {
            return 0.0;
        }
        let rows = 2 * occ_a.len();
        let cols = 2 * occ_b.len();
        let mut m = DMatrix::<Complex64>::zeros(rows, cols);
        for (ia, &xa) in occ_a.iter().enumerate() {
            for (ib, &xb) in occ_b.iter().enumerate() {
                for c in CoinBasis::ALL {
                    let row = 2 * ia + c.alice_defects() as usize;
                    let col = 2 * ib + c.bob_defects() as usize;
                    m[(row, col)] = self.amps[self.index_of(xa, xb, c.index())];
                }
            }
        }
        let gram = if rows <= cols {
            &m * m.adjoint()
        } else {
            m.adjoint() * &m
        };
        let mut entropy = 0.0;
        for &lambda in gram.symmetric_eigen().eigenvalues.iter() {
            if lambda > 0.0 {
                entropy -= lambda * lambda.log2();
            }
        }
        entropy.max(0.0)
    }

    /// Largest amplitude difference against a sparse state, over the
    /// window and over the sparse state's occupied sites.
    pub fn max_difference(&self, sparse: &JointState) -> f64 {
        let mut worst = 0.0f64;
        for xa in -self.half_a..=self.half_a {
            for xb in -self.half_b..=self.half_b {
                let site = sparse.site(xa, xb);
                for (c, &amp) in site.iter().enumerate() {
                    worst = worst.max((amp - self.amp(xa, xb, c)).norm());
                }
            }
        }
        worst
    }
}

/// Flat-index basis used by the assembled step matrix.
pub fn flat_index(xa: i64, xb: i64, c: usize, half: i64) -> usize {
    let width = (2 * half + 1) as usize;
    let ia = (xa + half) as usize;
    let ib = (xb + half) as usize;
    (ia * width + ib) * 4 + c
}

/// Brute-force assembly of the one-round evolution operator
/// `U = Ω · (I ⊗ U_c)` on the clipped window, as a dense row-major
/// matrix. Targets outside the window are dropped (clipped operator).
pub fn assemble_step_matrix(
    op: &CoinOperator,
    payoffs: &PayoffTable,
    half: i64,
) -> (usize, Vec<Complex64>) {
    let width = (2 * half + 1) as usize;
    let dim = width * width * 4;
    let mut u = vec![Complex64::ZERO; dim * dim];
    for xa in -half..=half {
        for xb in -half..=half {
            for from in CoinBasis::ALL {
                let col = flat_index(xa, xb, from.index(), half);
                for to in CoinBasis::ALL {
                    let amp = op.entry(to, from);
                    if amp == Complex64::ZERO {
                        continue;
                    }
                    let ta = xa + payoffs.alice_step(to);
                    let tb = xb + payoffs.bob_step(to);
                    if ta.abs() > half || tb.abs() > half {
                        continue;
                    }
                    let row = flat_index(ta, tb, to.index(), half);
                    u[row * dim + col] = amp;
                }
            }
        }
    }
    (dim, u)
}

/// Dense matrix-vector product for the assembled operator.
pub fn apply_step_matrix(u: &[Complex64], dim: usize, v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::ZERO; dim];
    for (row, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::ZERO;
        for (col, &x) in v.iter().enumerate() {
            let m = u[row * dim + col];
            if m != Complex64::ZERO {
                acc += m * x;
            }
        }
        *slot = acc;
    }
    out
}

/// Deterministic splitmix64; good enough for reproducible test inputs.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [-π, π).
    pub fn next_angle(&mut self) -> f64 {
        (self.next_f64() * 2.0 - 1.0) * std::f64::consts::PI
    }

    pub fn next_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }
}

/// A Haar-ish random 4x4 unitary via Gram–Schmidt on a random complex
/// matrix. Not distributionally exact, which is irrelevant here.
pub fn random_unitary(rng: &mut SplitMix64) -> CoinOperator {
    loop {
        let mut cols: Vec<[Complex64; 4]> = Vec::with_capacity(4);
        for _ in 0..4 {
            let mut v = [Complex64::ZERO; 4];
            for slot in v.iter_mut() {
                *slot = Complex64::new(rng.next_f64() * 2.0 - 1.0, rng.next_f64() * 2.0 - 1.0);
            }
            for prev in &cols {
                let overlap: Complex64 = prev.iter().zip(&v).map(|(p, x)| p.conj() * x).sum();
                for (slot, p) in v.iter_mut().zip(prev) {
                    *slot -= overlap * p;
                }
            }
            let norm: f64 = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                continue;
            }
            for slot in v.iter_mut() {
                *slot /= norm;
            }
            cols.push(v);
        }
        if cols.len() < 4 {
            continue;
        }
        let mut m = [[Complex64::ZERO; 4]; 4];
        for (j, col) in cols.iter().enumerate() {
            for (i, &a) in col.iter().enumerate() {
                m[i][j] = a;
            }
        }
        if let Ok(op) = CoinOperator::new(m) {
            return op;
        }
    }
}

/// A random normalized coin state.
pub fn random_coin(rng: &mut SplitMix64) -> CoinState {
    loop {
        let mut v = [Complex64::ZERO; 4];
        for slot in v.iter_mut() {
            *slot = Complex64::new(rng.next_f64() * 2.0 - 1.0, rng.next_f64() * 2.0 - 1.0);
        }
        let norm: f64 = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        for slot in v.iter_mut() {
            *slot /= norm;
        }
        if let Ok(coin) = CoinState::new(v) {
            return coin;
        }
    }
}

/// A random classical strategy satisfying the sequential row-sum
/// constraint, with admissible random phases: the defect phases of the
/// Temptation and Punishment entries are solved from the two block
/// orthogonality conditions.
pub fn random_admissible_sequential(
    rng: &mut SplitMix64,
) -> (
    qwalk_games::strategies::ClassicalStrategy,
    qwalk_games::strategies::SequentialPhases,
) {
    use qwalk_games::strategies::{ClassicalStrategy, SequentialPhases};
    let p_r = rng.next_f64();
    let p_s = rng.next_f64();
    let probs = ClassicalStrategy::new(p_r, p_s, 1.0 - p_r, 1.0 - p_s).unwrap();
    let cooperate = [
        rng.next_angle(),
        rng.next_angle(),
        rng.next_angle(),
        rng.next_angle(),
    ];
    let theta_r = rng.next_angle();
    let theta_s = rng.next_angle();
    // (φ_T - φ_R) - (θ_T - θ_R) = π, and the same for the (S,P) block.
    let theta_t = cooperate[2] - cooperate[0] + theta_r - std::f64::consts::PI;
    let theta_p = cooperate[3] - cooperate[1] + theta_s - std::f64::consts::PI;
    let phases = SequentialPhases {
        cooperate,
        defect: [theta_r, theta_s, theta_t, theta_p],
    };
    (probs, phases)
}
