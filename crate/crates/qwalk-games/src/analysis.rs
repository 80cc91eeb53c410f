//! Strategy-space sweeps, equilibrium detection, and entanglement-growth
//! analysis.
//!
//! The sweep walks the restricted one-parameter strategy family for both
//! players over a grid of `(ξ_A, ξ_B)` values, runs one unitary game per
//! grid point, and reports the payoff surface. Equilibrium search is
//! grid-based on purpose: a documented grid that contains the points of
//! interest exactly beats a continuous optimizer for reproducibility.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qstate::{CoinState, PayoffTable};
use crate::strategies::{compose_sequential, interpolated, Player};
use crate::walk::{run_game, GameConfig, Mode, RecordFlags};

/// Payoff differences below this are ties in argmax and Nash searches.
/// Well above accumulated rounding at 50 steps, well below strategic
/// payoff differences.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// A rectangular grid over the interpolation angles of both players,
/// together with the shared game setup.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    xi_a: Vec<f64>,
    xi_b: Vec<f64>,
    /// Who moves first in the per-round composition `U_second · U_first`.
    pub first_mover: Player,
    pub payoffs: PayoffTable,
    pub initial_coin: CoinState,
    pub steps: u32,
}

impl SweepGrid {
    /// Grid from explicit angle lists; values must be strictly increasing
    /// and within `[0, π/4]`.
    pub fn new(
        xi_a: Vec<f64>,
        xi_b: Vec<f64>,
        first_mover: Player,
        payoffs: PayoffTable,
        initial_coin: CoinState,
        steps: u32,
    ) -> Result<SweepGrid> {
        for (axis, name) in [(&xi_a, "xi_a"), (&xi_b, "xi_b")] {
            if axis.is_empty() {
                return Err(Error::InvalidConfig(format!("{name} grid is empty")));
            }
            if axis
                .iter()
                .any(|x| !(0.0..=std::f64::consts::FRAC_PI_4 + 1e-12).contains(x))
            {
                return Err(Error::InvalidConfig(format!(
                    "{name} values must lie in [0, pi/4]"
                )));
            }
            if axis.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidConfig(format!(
                    "{name} values must be strictly increasing"
                )));
            }
        }
        Ok(SweepGrid {
            xi_a,
            xi_b,
            first_mover,
            payoffs,
            initial_coin,
            steps,
        })
    }

    /// `points` evenly spaced values from 0 to π/4 inclusive on both axes.
    /// With 21 points the grid contains π/20 exactly (index 4).
    pub fn uniform(
        points: usize,
        first_mover: Player,
        payoffs: PayoffTable,
        initial_coin: CoinState,
        steps: u32,
    ) -> Result<SweepGrid> {
        if points < 1 {
            return Err(Error::InvalidConfig("grid needs at least one point".into()));
        }
        let axis: Vec<f64> = (0..points)
            .map(|k| std::f64::consts::FRAC_PI_4 * k as f64 / (points.max(2) - 1) as f64)
            .collect();
        SweepGrid::new(
            axis.clone(),
            axis,
            first_mover,
            payoffs,
            initial_coin,
            steps,
        )
    }

    pub fn xi_a(&self) -> &[f64] {
        &self.xi_a
    }

    pub fn xi_b(&self) -> &[f64] {
        &self.xi_b
    }

    /// The per-round coin operator at one grid point.
    pub fn coin_op_at(&self, xi_a: f64, xi_b: f64) -> crate::qstate::CoinOperator {
        let alice = interpolated(Player::A, xi_a);
        let bob = interpolated(Player::B, xi_b);
        match self.first_mover {
            Player::A => compose_sequential(&alice, &bob),
            Player::B => compose_sequential(&bob, &alice),
        }
    }

    fn config_at(&self, xi_a: f64, xi_b: f64) -> GameConfig {
        GameConfig {
            payoffs: self.payoffs,
            coin_op: self.coin_op_at(xi_a, xi_b),
            initial_coin: self.initial_coin.clone(),
            steps: self.steps,
            mode: Mode::Unitary,
            record: RecordFlags::default(),
        }
    }
}

/// Both players' mean payoffs over a sweep grid, row-major in
/// `(ξ_A index, ξ_B index)`.
#[derive(Debug, Clone)]
pub struct PayoffSurface {
    pub xi_a: Vec<f64>,
    pub xi_b: Vec<f64>,
    payoff_a: Vec<f64>,
    payoff_b: Vec<f64>,
}

impl PayoffSurface {
    pub fn from_values(
        xi_a: Vec<f64>,
        xi_b: Vec<f64>,
        payoff_a: Vec<f64>,
        payoff_b: Vec<f64>,
    ) -> Result<PayoffSurface> {
        if payoff_a.len() != xi_a.len() * xi_b.len() || payoff_b.len() != payoff_a.len() {
            return Err(Error::InvalidConfig(
                "surface dimensions do not match the grid".into(),
            ));
        }
        Ok(PayoffSurface {
            xi_a,
            xi_b,
            payoff_a,
            payoff_b,
        })
    }

    pub fn len_a(&self) -> usize {
        self.xi_a.len()
    }

    pub fn len_b(&self) -> usize {
        self.xi_b.len()
    }

    /// `(x̄_A, x̄_B)` at grid indices `(ia, ib)`.
    pub fn at(&self, ia: usize, ib: usize) -> (f64, f64) {
        let idx = ia * self.xi_b.len() + ib;
        (self.payoff_a[idx], self.payoff_b[idx])
    }

    /// True when some pair of grid points differs by more than `tol` in
    /// either player's payoff.
    pub fn is_non_constant(&self, tol: f64) -> bool {
        let spread = |v: &[f64]| {
            let min = v.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            max - min
        };
        spread(&self.payoff_a) > tol || spread(&self.payoff_b) > tol
    }
}

/// Run one game per grid point. Points are independent and are computed
/// in parallel on the current rayon pool; assembly is by grid index, so
/// the result does not depend on scheduling.
pub fn sweep(grid: &SweepGrid) -> Result<PayoffSurface> {
    let len_b = grid.xi_b.len();
    let total = grid.xi_a.len() * len_b;
    let means: Vec<(f64, f64)> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let xi_a = grid.xi_a[idx / len_b];
            let xi_b = grid.xi_b[idx % len_b];
            let result = run_game(&grid.config_at(xi_a, xi_b))
                .expect("sweep configs are unitary by construction");
            result.payoff_means()
        })
        .collect();
    PayoffSurface::from_values(
        grid.xi_a.clone(),
        grid.xi_b.clone(),
        means.iter().map(|m| m.0).collect(),
        means.iter().map(|m| m.1).collect(),
    )
}

/// Per-player argmax maps over the grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponses {
    /// For each ξ_B index, the set of ξ_A indices maximizing Alice's
    /// payoff (ties within [`TIE_TOLERANCE`]).
    pub alice: Vec<Vec<usize>>,
    /// For each ξ_A index, the set of ξ_B indices maximizing Bob's payoff.
    pub bob: Vec<Vec<usize>>,
}

/// Grid equilibrium structure: Nash points, the Pareto set, and the
/// best-response maps they derive from.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    /// Grid coordinates `(ia, ib)` that are mutual best responses.
    pub nash: Vec<(usize, usize)>,
    /// Grid coordinates not dominated by any other point.
    pub pareto: Vec<(usize, usize)>,
    pub best_responses: BestResponses,
}

fn argmax_with_ties(values: impl Iterator<Item = f64>) -> Vec<usize> {
    let values: Vec<f64> = values.collect();
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v >= max - TIE_TOLERANCE)
        .map(|(i, _)| i)
        .collect()
}

/// Argmax sets for both players.
pub fn best_response_curves(surface: &PayoffSurface) -> BestResponses {
    let alice = (0..surface.len_b())
        .map(|ib| argmax_with_ties((0..surface.len_a()).map(|ia| surface.at(ia, ib).0)))
        .collect();
    let bob = (0..surface.len_a())
        .map(|ia| argmax_with_ties((0..surface.len_b()).map(|ib| surface.at(ia, ib).1)))
        .collect();
    BestResponses { alice, bob }
}

/// Nash points (mutual best responses, ties within [`TIE_TOLERANCE`]) and
/// the Pareto set (dominance filtering over all grid points).
pub fn find_nash(surface: &PayoffSurface) -> EquilibriumReport {
    let best_responses = best_response_curves(surface);
    let mut nash = Vec::new();
    for ia in 0..surface.len_a() {
        for ib in 0..surface.len_b() {
            if best_responses.alice[ib].contains(&ia) && best_responses.bob[ia].contains(&ib) {
                nash.push((ia, ib));
            }
        }
    }

    let mut pareto = Vec::new();
    for ia in 0..surface.len_a() {
        'point: for ib in 0..surface.len_b() {
            let (pa, pb) = surface.at(ia, ib);
            for qa in 0..surface.len_a() {
                for qb in 0..surface.len_b() {
                    let (xa, xb) = surface.at(qa, qb);
                    if xa >= pa && xb >= pb && (xa > pa || xb > pb) {
                        continue 'point;
                    }
                }
            }
            pareto.push((ia, ib));
        }
    }

    EquilibriumReport {
        nash,
        pareto,
        best_responses,
    }
}

/// One least-squares fit `y ≈ intercept + slope · x`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Fit {
    pub intercept: f64,
    pub slope: f64,
    /// Root-mean-square residual over the fitted window.
    pub residual: f64,
}

fn least_squares(xs: &[f64], ys: &[f64]) -> Fit {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        let intercept = ys.first().copied().unwrap_or(0.0);
        return Fit {
            intercept,
            slope: 0.0,
            residual: 0.0,
        };
    }
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = mean_y - slope * mean_x;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    Fit {
        intercept,
        slope,
        residual: (sse / n).sqrt(),
    }
}

/// Entropy-per-step series with growth fits.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EntropyGrowth {
    /// `(n, S_n)` for n = 1..steps.
    pub series: Vec<(u32, f64)>,
    /// Fit of `S ≈ a + b·ln n` over the second half of the series.
    pub log_fit: Fit,
    /// Fit of `S ≈ a + b·n` over the same window, for comparison.
    pub linear_fit: Fit,
}

/// Run a unitary game recording entanglement entropy after every step,
/// then fit the growth over `n ∈ [steps/2, steps]` (transient excluded)
/// against both `ln n` and `n`.
pub fn entropy_growth(config: &GameConfig) -> Result<EntropyGrowth> {
    if config.mode != Mode::Unitary {
        return Err(Error::InvalidConfig(
            "entropy growth requires unitary mode".into(),
        ));
    }
    let mut cfg = config.clone();
    cfg.record.entropy_series = true;
    let result = run_game(&cfg)?;
    let series: Vec<(u32, f64)> = result
        .entropy_series
        .expect("entropy series was requested")
        .into_iter()
        .enumerate()
        .map(|(i, s)| (i as u32 + 1, s))
        .collect();

    let window_start = (config.steps / 2).max(1);
    let window: Vec<&(u32, f64)> = series.iter().filter(|(n, _)| *n >= window_start).collect();
    let log_x: Vec<f64> = window.iter().map(|(n, _)| (*n as f64).ln()).collect();
    let lin_x: Vec<f64> = window.iter().map(|(n, _)| *n as f64).collect();
    let ys: Vec<f64> = window.iter().map(|(_, s)| *s).collect();

    Ok(EntropyGrowth {
        log_fit: least_squares(&log_x, &ys),
        linear_fit: least_squares(&lin_x, &ys),
        series,
    })
}
