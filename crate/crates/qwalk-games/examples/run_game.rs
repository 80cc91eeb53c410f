//! Run one iterated quantum game and watch the payoffs accumulate.
//!
//! Alice plays the quantum Pavlov strategy (a CNOT controlled by Bob's
//! coin), Bob replies with the Hadamard Random strategy, and the walkers'
//! positions record the running score.
//!
//! ```bash
//! cargo run --release --example run_game
//! ```

use qwalk_games::qstate::{CoinState, PayoffTable};
use qwalk_games::strategies::{compose_sequential, pavlov, random_hadamard, Player};
use qwalk_games::walk::{run_game, GameConfig, Mode, RecordFlags};

fn main() {
    let coin_op = compose_sequential(
        &pavlov(Player::A, 0.0, 0.0, 0.0),
        &random_hadamard(Player::B),
    );
    let config = GameConfig {
        payoffs: PayoffTable::pd_default(),
        coin_op,
        initial_coin: CoinState::bell_phi_plus(),
        steps: 50,
        mode: Mode::Unitary,
        record: RecordFlags {
            trajectory: true,
            entropy_series: false,
            final_distribution: true,
        },
    };

    let result = run_game(&config).expect("valid unitary configuration");

    println!("Pavlov (Alice) vs Random (Bob), Alice moves first");
    println!("payoff table: {:?}", config.payoffs.game_class());
    println!();
    println!("  n     x̄_A        x̄_B");
    for (n, (a, b)) in result.trajectory.as_ref().unwrap().iter().enumerate() {
        if (n + 1) % 10 == 0 || n == 0 {
            println!("{:>3}  {a:>9.4}  {b:>9.4}", n + 1);
        }
    }
    println!();
    println!(
        "final payoff means after {} rounds: ({:.6}, {:.6})",
        result.steps, result.payoff_mean_a, result.payoff_mean_b
    );

    let dist = result.final_distribution.unwrap();
    let mut top: Vec<_> = dist.iter().collect();
    top.sort_by(|x, y| y.probability.total_cmp(&x.probability));
    println!("five most likely payoff outcomes:");
    for site in top.iter().take(5) {
        println!(
            "  (x_A = {:>4}, x_B = {:>4})  p = {:.4}",
            site.x_a, site.x_b, site.probability
        );
    }
}
