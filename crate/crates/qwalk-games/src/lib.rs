//! Iterated bipartite quantum games on a two-walker discrete-time quantum
//! walk.
//!
//! Two players repeatedly choose cooperate/defect through two-qubit coin
//! unitaries; a conditional shift then moves each walker by that round's
//! payoff, so the walkers' positions accumulate the score. The crate
//! provides:
//!
//! * [`qstate`] — the sparse joint state, its unitary evolution, and the
//!   observables read off it (payoff means and distributions, reduced
//!   densities, entanglement entropy);
//! * [`strategies`] — quantum embeddings of classical conditional
//!   strategies (Pavlov, Random, tit-for-tat, a Pavlov↔Random
//!   interpolation family), sequential and simultaneous, with the
//!   unitarity constraints that decide which pairs can play;
//! * [`walk`] — full game runs, unitary or with per-round coin
//!   measurement (the classical limit);
//! * [`classical`] — an exact Markov-chain oracle for the corresponding
//!   classical iterated games;
//! * [`analysis`] — strategy-space sweeps, Nash/Pareto reports, and
//!   entanglement-growth fits;
//! * [`cli`] — the command-line front end used by the `qwalk-games`
//!   binary.
//!
//! Start with the `examples/` directory: each example is a runnable tour
//! of one capability.

pub mod analysis;
pub mod classical;
pub mod cli;
pub mod error;
pub mod qstate;
pub mod strategies;
pub mod walk;

pub use error::{Error, Result};
