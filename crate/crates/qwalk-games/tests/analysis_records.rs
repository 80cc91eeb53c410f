//! Structural facts about the payoff surfaces, recorded as regression
//! fixtures after first computation. The qualitative claims here depend
//! on the crate's documented sign conventions for the interpolation
//! family, so they pin down *this* implementation's behavior.

mod common;

use qwalk_games::analysis::{self, SweepGrid};
use qwalk_games::qstate::{CoinState, PayoffTable};
use qwalk_games::strategies::Player;

#[test]
fn surface_respects_role_swap_symmetry() {
    // With a swap-symmetric initial coin, Alice's payoff at (ξ_A, ξ_B)
    // under Alice-first composition equals Bob's payoff at (ξ_B, ξ_A)
    // under Bob-first composition.
    let grid = |first| {
        SweepGrid::uniform(
            9,
            first,
            PayoffTable::pd_default(),
            CoinState::bell_phi_plus(),
            20,
        )
        .unwrap()
    };
    let a_first = analysis::sweep(&grid(Player::A)).unwrap();
    let b_first = analysis::sweep(&grid(Player::B)).unwrap();
    let mut worst = 0.0f64;
    for ia in 0..9 {
        for ib in 0..9 {
            let (pa, _) = a_first.at(ia, ib);
            let (_, qb) = b_first.at(ib, ia);
            worst = worst.max((pa - qb).abs());
        }
    }
    assert!(worst < 1e-10, "swap-symmetry deviation {worst}");
}

#[test]
fn best_response_structure_for_the_paper_coins() {
    let pd = PayoffTable::pd_default();

    // Fully entangled Φ+ coin: ξ_A = 0 maximizes Alice's payoff for some
    // opponent choices and never minimizes it. (Under this crate's sign
    // convention the argmax alternates between the first two grid points
    // rather than sitting at 0 for every ξ_B; recorded, not idealized.)
    let grid = SweepGrid::uniform(21, Player::A, pd, CoinState::bell_phi_plus(), 50).unwrap();
    let surface = analysis::sweep(&grid).unwrap();
    let report = analysis::find_nash(&surface);
    let (max_some, min_some) = pavlov_extremes(&surface);
    assert!(max_some, "ξ_A = 0 should maximize for some ξ_B");
    assert!(!min_some, "ξ_A = 0 should never minimize for the Φ+ coin");
    assert!(
        report
            .best_responses
            .alice
            .iter()
            .all(|set| set.iter().all(|&ia| ia <= 1)),
        "Alice's best response should stay within one grid cell of Pavlov"
    );
    println!(
        "Φ+ coin: Nash set {:?}, Alice argmax within grid indices 0..=1 for every ξ_B",
        report.nash
    );

    // Ψ+ coin: the same Pavlov strategy turns worst-case — ξ_A = 0 is
    // the minimum for some ξ_B and never the maximum.
    let grid = SweepGrid::uniform(21, Player::A, pd, CoinState::bell_psi_plus(), 50).unwrap();
    let surface = analysis::sweep(&grid).unwrap();
    let (max_some, min_some) = pavlov_extremes(&surface);
    assert!(min_some, "ξ_A = 0 should minimize for some ξ_B");
    assert!(!max_some, "ξ_A = 0 should never maximize for the Ψ+ coin");
    println!("Ψ+ coin: Pavlov is worst-case for some opponent choices — extremes flip with the initial coin");
}

fn pavlov_extremes(surface: &analysis::PayoffSurface) -> (bool, bool) {
    let mut max_some = false;
    let mut min_some = false;
    for ib in 0..surface.len_b() {
        let column: Vec<f64> = (0..surface.len_a())
            .map(|ia| surface.at(ia, ib).0)
            .collect();
        let max = column.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = column.iter().cloned().fold(f64::INFINITY, f64::min);
        if (column[0] - max).abs() < 1e-9 {
            max_some = true;
        }
        if (column[0] - min).abs() < 1e-9 {
            min_some = true;
        }
    }
    (max_some, min_some)
}
