//! Entanglement between the players grows at a logarithmic rate.
//!
//! No entangled initial state is needed: the conditional shift generates
//! entanglement dynamically. This example records the von Neumann entropy
//! of one agent's subsystem (position + coin) after every round of a
//! Pavlov vs Random game and fits the growth against both `ln n` and `n`.
//!
//! ```bash
//! cargo run --release --example entropy_growth
//! ```

use qwalk_games::analysis::entropy_growth;
use qwalk_games::qstate::{CoinState, PayoffTable};
use qwalk_games::strategies::{compose_sequential, pavlov, random_hadamard, Player};
use qwalk_games::walk::{GameConfig, Mode, RecordFlags};

fn main() {
    let config = GameConfig {
        payoffs: PayoffTable::pd_default(),
        coin_op: compose_sequential(
            &random_hadamard(Player::B),
            &pavlov(Player::A, 0.0, 0.0, 0.0),
        ),
        initial_coin: CoinState::unbiased_product(),
        steps: 50,
        mode: Mode::Unitary,
        record: RecordFlags::default(),
    };
    let growth = entropy_growth(&config).expect("unitary configuration");

    println!("entropy of entanglement (bits) after each round:");
    println!("  n    S_n");
    for (n, s) in &growth.series {
        if n % 5 == 0 || *n == 1 {
            println!("{n:>4}  {s:.5}");
        }
    }
    println!();
    println!(
        "fit over the second half of the series:\n  S ≈ {:.4} + {:.4}·ln n   (rms residual {:.2e})\n  S ≈ {:.4} + {:.4}·n      (rms residual {:.2e})",
        growth.log_fit.intercept,
        growth.log_fit.slope,
        growth.log_fit.residual,
        growth.linear_fit.intercept,
        growth.linear_fit.slope,
        growth.linear_fit.residual,
    );
    if growth.log_fit.residual < growth.linear_fit.residual {
        println!("the logarithmic fit wins: growth slows like ln n, it is not linear.");
    }
}
