//! Measuring the coins each round recovers the classical game.
//!
//! The measured mode decoheres the joint coin after every coin operation
//! and propagates the resulting probability distribution exactly. Its
//! payoff means coincide with the classical Markov-chain oracle to full
//! numerical precision, for every embeddable strategy pair.
//!
//! ```bash
//! cargo run --release --example classical_limit
//! ```

use qwalk_games::classical::{classical_expected_payoffs, JointCoinDistribution, MoveOrder};
use qwalk_games::qstate::{CoinBasis, CoinState, PayoffTable};
use qwalk_games::strategies::{
    compose_sequential, pavlov, random_hadamard, simultaneous_auto, ClassicalStrategy, Player,
};
use qwalk_games::walk::{run_measured, GameConfig, Mode, RecordFlags};

fn main() {
    let pd = PayoffTable::pd_default();
    let steps = 60;

    let cases = [
        (
            "Pavlov vs Random (Alice first)",
            compose_sequential(
                &pavlov(Player::A, 0.0, 0.0, 0.0),
                &random_hadamard(Player::B),
            ),
            ClassicalStrategy::pavlov(),
            ClassicalStrategy::random(),
            MoveOrder::AliceFirst,
        ),
        (
            "Pavlov vs Random (Bob first)",
            compose_sequential(
                &random_hadamard(Player::B),
                &pavlov(Player::A, 0.0, 0.0, 0.0),
            ),
            ClassicalStrategy::pavlov(),
            ClassicalStrategy::random(),
            MoveOrder::BobFirst,
        ),
        (
            "Pavlov vs TFT (simultaneous)",
            simultaneous_auto(
                &ClassicalStrategy::pavlov(),
                &ClassicalStrategy::tit_for_tat(),
            )
            .unwrap(),
            ClassicalStrategy::pavlov(),
            ClassicalStrategy::tit_for_tat(),
            MoveOrder::Simultaneous,
        ),
    ];

    println!("both players start from certain cooperation (|CC⟩), N = {steps}\n");
    println!(
        "{:<34} {:>12} {:>12} {:>10}",
        "game", "measured", "classical", "|Δ|"
    );
    for (name, op, strat_a, strat_b, order) in cases {
        let config = GameConfig {
            payoffs: pd,
            coin_op: op,
            initial_coin: CoinState::basis(CoinBasis::CC),
            steps,
            mode: Mode::Measured,
            record: RecordFlags::default(),
        };
        let measured = run_measured(&config).unwrap();
        let (ca, cb) = classical_expected_payoffs(
            &strat_a,
            &strat_b,
            &JointCoinDistribution::certain(CoinBasis::CC),
            steps,
            &pd,
            order,
        );
        let delta = (measured.payoff_mean_a - ca)
            .abs()
            .max((measured.payoff_mean_b - cb).abs());
        println!(
            "{name:<34} ({:>6.3}, {:>6.3}) ({ca:>6.3}, {cb:>6.3}) {delta:>10.2e}",
            measured.payoff_mean_a, measured.payoff_mean_b,
        );
    }
    println!("\nper-round measurement erases interference: the walk plays the classical game.");
}
