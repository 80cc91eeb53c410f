//! Which classical strategies can face each other as quantum players?
//!
//! Sequential play demands `p_R + p_T = p_S + p_P = 1` of each strategy
//! separately; simultaneous play has joint conditions instead. The table
//! printed here marks each pairing with the scheme(s) that admit it:
//! `1` sequential, `2` simultaneous, `1, 2` both, or `not unitary`.
//!
//! ```bash
//! cargo run --release --example strategy_compatibility
//! ```

use qwalk_games::strategies::{compatibility, ClassicalStrategy};

fn main() {
    let named = [
        ("Random", ClassicalStrategy::random()),
        ("Pavlov", ClassicalStrategy::pavlov()),
        ("TFT", ClassicalStrategy::tit_for_tat()),
    ];

    println!("{:<10} {:<14} {:<14} {:<14}", "", "Random", "Pavlov", "TFT");
    for (row_name, row) in &named {
        let mut cells = Vec::new();
        for (_, col) in &named {
            let compat = compatibility(row, col);
            let verdict = match (compat.sequential_ok, compat.simultaneous_ok) {
                (true, true) => "1, 2",
                (true, false) => "1",
                (false, true) => "2",
                (false, false) => "not unitary",
            };
            cells.push(verdict.to_string());
        }
        println!(
            "{row_name:<10} {:<14} {:<14} {:<14}",
            cells[0], cells[1], cells[2]
        );
    }

    println!();
    let pp = compatibility(&ClassicalStrategy::pavlov(), &ClassicalStrategy::pavlov());
    println!("Pavlov vs Pavlov: {}", pp.reason);
    println!();
    let rt = compatibility(
        &ClassicalStrategy::random(),
        &ClassicalStrategy::tit_for_tat(),
    );
    println!("Random vs TFT: {}", rt.reason);
}
