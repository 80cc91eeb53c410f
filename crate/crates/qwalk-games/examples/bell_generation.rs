//! The Pavlov/Random coin circuits as entanglers.
//!
//! Composing one player's Hadamard with the other's Pavlov CNOT maps
//! every computational basis state of the joint coin to a maximally
//! entangled state — but only in one composition order. This example
//! prints the one-qubit reduced entropy for both orders, making the
//! convention explicit.
//!
//! ```bash
//! cargo run --release --example bell_generation
//! ```

use qwalk_games::qstate::{CoinBasis, CoinState, JointState};
use qwalk_games::strategies::{compose_sequential, pavlov, random_hadamard, Player};

fn main() {
    let orders = [
        (
            "Random (Bob) first, then Pavlov (Alice)",
            compose_sequential(
                &random_hadamard(Player::B),
                &pavlov(Player::A, 0.0, 0.0, 0.0),
            ),
        ),
        (
            "Pavlov (Alice) first, then Random (Bob)",
            compose_sequential(
                &pavlov(Player::A, 0.0, 0.0, 0.0),
                &random_hadamard(Player::B),
            ),
        ),
    ];

    for (name, op) in &orders {
        println!("{name}:");
        for c in CoinBasis::ALL {
            let state = JointState::from_coin(&CoinState::basis(c))
                .unwrap()
                .apply_coin(op);
            let entropy = state.reduced_coin_density().alice_qubit_entropy();
            let verdict = if (entropy - 1.0).abs() < 1e-9 {
                "maximally entangled"
            } else if entropy < 1e-9 {
                "product state"
            } else {
                "partially entangled"
            };
            println!("  |{c:?}⟩ → one-qubit entropy {entropy:.6} bits ({verdict})");
        }
        println!();
    }
    println!("Only the Random-first order turns every basis state into a Bell state.");
}
