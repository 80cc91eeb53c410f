//! Pavlov vs tit-for-tat: a game that only exists in simultaneous form.
//!
//! TFT has no unitary sequential embedding, but played simultaneously
//! against Pavlov the joint move is a simple rephased permutation of the
//! coin basis. Classically this matchup is a wash — from unbiased
//! independent first moves both players average zero. From an entangled
//! Bell coin the quantum game instead pays both players.
//!
//! ```bash
//! cargo run --release --example simultaneous_pavlov_tft
//! ```

use qwalk_games::classical::{classical_expected_payoffs, JointCoinDistribution, MoveOrder};
use qwalk_games::qstate::{CoinState, PayoffTable};
use qwalk_games::strategies::{
    pavlov_tft, sequential_from_classical, ClassicalStrategy, Player, SequentialPhases,
};
use qwalk_games::walk::{run_game, GameConfig, Mode, RecordFlags};

fn main() {
    let pd = PayoffTable::pd_default();
    let steps = 50;

    // Sequential TFT is impossible: the embedding reports the violated
    // constraint.
    match sequential_from_classical(
        Player::B,
        &ClassicalStrategy::tit_for_tat(),
        &SequentialPhases::canonical(),
    ) {
        Err(e) => println!("sequential TFT rejected: {e}"),
        Ok(_) => unreachable!("tit-for-tat must not embed sequentially"),
    }

    // Classical baseline, unbiased independent first moves.
    let (ca, cb) = classical_expected_payoffs(
        &ClassicalStrategy::pavlov(),
        &ClassicalStrategy::tit_for_tat(),
        &JointCoinDistribution::uniform(),
        steps,
        &pd,
        MoveOrder::Simultaneous,
    );
    println!("classical Pavlov vs TFT from uniform first moves, N = {steps}: ({ca}, {cb})");

    // Quantum simultaneous game from the Bell coin.
    let config = GameConfig {
        payoffs: pd,
        coin_op: pavlov_tft(0.0, 0.0, 0.0),
        initial_coin: CoinState::bell_phi_plus(),
        steps,
        mode: Mode::Unitary,
        record: RecordFlags::default(),
    };
    let quantum = run_game(&config).unwrap();
    println!(
        "quantum Pavlov vs TFT from (|00⟩+|11⟩)/√2, N = {steps}: ({:.3}, {:.3})",
        quantum.payoff_mean_a, quantum.payoff_mean_b
    );
    println!("the entangled start breaks the classical tie in both players' favor.");
}
