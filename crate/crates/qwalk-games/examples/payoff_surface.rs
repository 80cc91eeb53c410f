//! Sweep the restricted strategy space and search for equilibria.
//!
//! Both players pick from the one-parameter family interpolating between
//! Pavlov (ξ = 0) and Random (ξ = π/4). One unitary game runs per grid
//! point; the resulting payoff surface feeds a grid Nash search and a
//! Pareto dominance filter.
//!
//! ```bash
//! cargo run --release --example payoff_surface
//! ```

use qwalk_games::analysis::{best_response_curves, find_nash, sweep, SweepGrid};
use qwalk_games::qstate::{CoinState, PayoffTable};
use qwalk_games::strategies::Player;

fn main() {
    let points = 11;
    let steps = 50;
    let grid = SweepGrid::uniform(
        points,
        Player::A,
        PayoffTable::pd_default(),
        CoinState::bell_phi_plus(),
        steps,
    )
    .unwrap();
    let surface = sweep(&grid).unwrap();

    println!(
        "Alice's payoff over the (ξ_A, ξ_B) grid, N = {steps}, Bell initial coin \
         (rows: ξ_A from 0 to π/4):"
    );
    for ia in 0..points {
        let cells: Vec<String> = (0..points)
            .map(|ib| format!("{:>7.2}", surface.at(ia, ib).0))
            .collect();
        println!("  {}", cells.join(" "));
    }

    let report = find_nash(&surface);
    println!();
    for &(ia, ib) in &report.nash {
        let (pa, pb) = surface.at(ia, ib);
        println!(
            "Nash point at ξ_A = {:.4}, ξ_B = {:.4} with payoffs ({pa:.3}, {pb:.3})",
            grid.xi_a()[ia],
            grid.xi_b()[ib]
        );
    }
    println!(
        "Pareto set has {} of {} grid points",
        report.pareto.len(),
        points * points
    );

    let responses = best_response_curves(&surface);
    let pavlov_best = responses
        .alice
        .iter()
        .filter(|set| set.contains(&0))
        .count();
    println!(
        "Alice's best response includes Pavlov (ξ_A = 0) for {pavlov_best} of {points} \
         opponent choices"
    );
}
