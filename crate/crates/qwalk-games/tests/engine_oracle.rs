//! Sparse-engine results checked against the independent dense reference
//! evolution, plus reference values frozen from that oracle.
//!
//! Frozen constants were produced by `tests/fixture_gen.rs`; regenerate
//! with `cargo test --test fixture_gen -- --ignored --nocapture`.

mod common;

use common::{
    apply_step_matrix, assemble_step_matrix, flat_index, random_coin, random_unitary, DenseState,
    SplitMix64,
};
use num_complex::Complex64;
use qwalk_games::qstate::{CoinBasis, CoinOperator, CoinState, JointState, PayoffTable};
use qwalk_games::strategies::{
    compose_sequential, interpolated, pavlov, random_hadamard, sequential_from_classical, Player,
};
use qwalk_games::walk::{run_game, GameConfig, Mode, RecordFlags};

/// Bob's Hadamard first, then Alice's Pavlov (the Bell-generating order).
fn pavlov_after_random() -> CoinOperator {
    compose_sequential(
        &random_hadamard(Player::B),
        &pavlov(Player::A, 0.0, 0.0, 0.0),
    )
}

/// Frozen dense-oracle payoff means: Pavlov-A after Random-B, Bell coin,
/// standard table, N = 50.
const PAVLOV_AFTER_RANDOM_BELL_N50: (f64, f64) = (-3.631301083816565, 10.89390325144962);

/// Frozen dense-oracle entropy values (bits) for the same run.
const ENTROPY_FIXTURES: [(u32, f64); 5] = [
    (1, 2.0),
    (2, 2.5),
    (10, 4.454230524387929),
    (25, 5.574022675357502),
    (50, 6.521716108448557),
];

#[test]
fn pavlov_after_random_bell_means_match_oracle() {
    let pd = PayoffTable::pd_default();
    let op = pavlov_after_random();
    let mut state = JointState::from_coin(&CoinState::bell_phi_plus()).unwrap();
    for _ in 0..50 {
        state = state.step(&op, &pd);
    }
    let (ma, mb) = state.payoff_means();
    assert!(
        (ma - PAVLOV_AFTER_RANDOM_BELL_N50.0).abs() < 1e-10,
        "got {ma}"
    );
    assert!(
        (mb - PAVLOV_AFTER_RANDOM_BELL_N50.1).abs() < 1e-10,
        "got {mb}"
    );

    // And the dense evolution agrees amplitude by amplitude.
    let mut dense = DenseState::from_coin(&CoinState::bell_phi_plus(), 100, 100);
    for _ in 0..50 {
        dense.step(&op, &pd);
    }
    assert!(dense.max_difference(&state) < 1e-12);
}

#[test]
fn entropy_series_matches_oracle_fixtures() {
    let pd = PayoffTable::pd_default();
    let op = pavlov_after_random();
    let mut state = JointState::from_coin(&CoinState::bell_phi_plus()).unwrap();
    let mut step = 0;
    for &(n, expected) in &ENTROPY_FIXTURES {
        while step < n {
            state = state.step(&op, &pd);
            step += 1;
        }
        let s = state.entanglement_entropy();
        assert!(
            (s - expected).abs() < 1e-9,
            "entropy at n = {n}: engine {s}, oracle {expected}"
        );
    }
}

#[test]
fn reduced_density_after_two_steps_is_maximally_mixed() {
    // Dense-oracle result: two rounds of Pavlov-after-Random from |00⟩
    // leave the joint coin in the maximally mixed state.
    let pd = PayoffTable::pd_default();
    let op = pavlov_after_random();
    let state = JointState::from_coin(&CoinState::basis(CoinBasis::CC))
        .unwrap()
        .step(&op, &pd)
        .step(&op, &pd);
    let rho = state.reduced_coin_density();
    for i in CoinBasis::ALL {
        for j in CoinBasis::ALL {
            let expected = if i == j {
                Complex64::new(0.25, 0.0)
            } else {
                Complex64::ZERO
            };
            assert!(
                (rho.entry(i, j) - expected).norm() < 1e-12,
                "rho[{i:?}][{j:?}] = {:?}",
                rho.entry(i, j)
            );
        }
    }

    // Cross-check against the dense oracle's density matrix directly.
    let mut dense = DenseState::from_coin(&CoinState::basis(CoinBasis::CC), 8, 8);
    dense.step(&op, &pd);
    dense.step(&op, &pd);
    let oracle_rho = dense.reduced_coin_density();
    for (i, row) in oracle_rho.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let e = rho.entry(CoinBasis::from_index(i), CoinBasis::from_index(j));
            assert!((e - cell).norm() < 1e-13);
        }
    }
}

#[test]
fn sparse_engine_matches_assembled_step_matrix() {
    // Structured configs on a clipped window: dense matrix-vector
    // iteration of the assembled one-round operator against the engine.
    let pd = PayoffTable::pd_default();
    let configs = [
        (pavlov_after_random(), CoinState::bell_phi_plus(), 4u32),
        (
            compose_sequential(&random_hadamard(Player::A), &random_hadamard(Player::B)),
            CoinState::unbiased_product(),
            3,
        ),
        (
            compose_sequential(&interpolated(Player::A, 0.3), &interpolated(Player::B, 0.6)),
            CoinState::basis(CoinBasis::CD),
            4,
        ),
    ];
    for (op, coin, steps) in configs {
        let half = 2 * steps as i64;
        let (dim, u) = assemble_step_matrix(&op, &pd, half);
        let mut vec_state = vec![Complex64::ZERO; dim];
        for (c, &a) in coin.amps().iter().enumerate() {
            vec_state[flat_index(0, 0, c, half)] = a;
        }
        let mut sparse = JointState::from_coin(&coin).unwrap();
        for _ in 0..steps {
            vec_state = apply_step_matrix(&u, dim, &vec_state);
            sparse = sparse.step(&op, &pd);
        }
        let mut worst = 0.0f64;
        for xa in -half..=half {
            for xb in -half..=half {
                let site = sparse.site(xa, xb);
                for (c, &amp) in site.iter().enumerate() {
                    let reference = vec_state[flat_index(xa, xb, c, half)];
                    worst = worst.max((amp - reference).norm());
                }
            }
        }
        assert!(worst < 1e-12, "max deviation {worst}");
    }
}

#[test]
fn random_configs_match_dense_evolution() {
    let mut rng = SplitMix64(0x5eed_0001);
    for case in 0..12 {
        let op = if case % 2 == 0 {
            random_unitary(&mut rng)
        } else {
            let (probs_a, phases_a) = common::random_admissible_sequential(&mut rng);
            let (probs_b, phases_b) = common::random_admissible_sequential(&mut rng);
            let a = sequential_from_classical(Player::A, &probs_a, &phases_a).unwrap();
            let b = sequential_from_classical(Player::B, &probs_b, &phases_b).unwrap();
            compose_sequential(&a, &b)
        };
        let payoffs = PayoffTable::new(
            rng.next_range(-2, 2),
            rng.next_range(-2, 2),
            rng.next_range(-2, 2),
            rng.next_range(-2, 2),
        );
        let coin = random_coin(&mut rng);
        let steps = 1 + (rng.next_u64() % 6) as u32;

        let half = steps as i64
            * payoffs
                .max_step()
                .abs()
                .max(payoffs.min_step().abs())
                .max(1);
        let mut dense = DenseState::from_coin(&coin, half, half);
        let mut sparse = JointState::from_coin(&coin).unwrap();
        for _ in 0..steps {
            dense.step(&op, &payoffs);
            sparse = sparse.step(&op, &payoffs);
        }
        let diff = dense.max_difference(&sparse);
        assert!(diff < 1e-12, "case {case}: max deviation {diff}");
        assert!((sparse.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn entropy_against_dense_for_general_unitaries() {
    let mut rng = SplitMix64(0xabcdef);
    for _ in 0..4 {
        let op = random_unitary(&mut rng);
        let coin = random_coin(&mut rng);
        let pd = PayoffTable::pd_default();
        let mut dense = DenseState::from_coin(&coin, 14, 14);
        let mut sparse = JointState::from_coin(&coin).unwrap();
        for _ in 0..7 {
            dense.step(&op, &pd);
            sparse = sparse.step(&op, &pd);
        }
        let se = sparse.entanglement_entropy();
        let de = dense.entropy_bits();
        assert!((se - de).abs() < 1e-9, "engine {se} vs dense {de}");
    }
}

#[test]
fn bob_first_interpolated_node_matches_dense() {
    // One grid point of the Bob-first surface: both players at ξ = 0,
    // unbiased product coin, N = 50.
    let pd = PayoffTable::pd_default();
    let op = compose_sequential(&interpolated(Player::B, 0.0), &interpolated(Player::A, 0.0));
    let mut dense = DenseState::from_coin(&CoinState::unbiased_product(), 100, 100);
    let mut sparse = JointState::from_coin(&CoinState::unbiased_product()).unwrap();
    for _ in 0..50 {
        dense.step(&op, &pd);
        sparse = sparse.step(&op, &pd);
    }
    assert!(dense.max_difference(&sparse) < 1e-12);
    let (ea, eb) = dense.payoff_means();
    let (ma, mb) = sparse.payoff_means();
    assert!((ma - ea).abs() < 1e-12 && (mb - eb).abs() < 1e-12);
}

#[test]
fn trajectory_matches_oracle_along_the_way() {
    let pd = PayoffTable::pd_default();
    let op = pavlov_after_random();
    let config = GameConfig {
        payoffs: pd,
        coin_op: op.clone(),
        initial_coin: CoinState::bell_phi_plus(),
        steps: 20,
        mode: Mode::Unitary,
        record: RecordFlags {
            trajectory: true,
            entropy_series: false,
            final_distribution: false,
        },
    };
    let result = run_game(&config).unwrap();
    let trajectory = result.trajectory.unwrap();
    let mut dense = DenseState::from_coin(&CoinState::bell_phi_plus(), 40, 40);
    for (n, (ta, tb)) in trajectory.iter().enumerate() {
        dense.step(&op, &pd);
        let (da, db) = dense.payoff_means();
        assert!((ta - da).abs() < 1e-12, "step {}: {ta} vs {da}", n + 1);
        assert!((tb - db).abs() < 1e-12);
    }
}
