//! Semiring-generic grounding, naive evaluation and convergence analysis for
//! linear Datalog programs.
//!
//! The pipeline is: parse a program ([`frontend`]), ground it over an EDB
//! instance into `f(x) = Ax ⊕ b`, iterate it from zero ([`engine`]), and
//! compare the measured stability index with the known convergence bounds
//! ([`bounds`]). [`walk`] holds brute-force walk-sum oracles and the cycle
//! decomposition used to cross-check the engine.

pub mod bounds;
pub mod cli;
pub mod engine;
pub mod frontend;
pub mod generators;
pub mod io;
pub mod semiring;
pub mod walk;

/// The seeded generator used everywhere randomness is needed.
pub type SeededRng = rand_chacha::ChaCha8Rng;
