//! Combinatorics of the stationary measure of the TASEP with second class
//! particles, on the cycle and on finite windows of the line.
//!
//! States are written with `1` for particles, `0` for anti-particles and `*`
//! for empty sites. The stationary measure on the cycle is the pushforward of
//! the uniform measure on pairs of position sets `(S, T)` under the collapsing
//! procedure: anti-particles are fixed at `T` and each seed in `S` slides left
//! to the nearest empty site. The unnormalized probability of a state is the
//! product of the domination weights `W(A)` of its binary segments.
//!
//! The crate provides:
//!
//! * [`seq`] — binary sequences, the domination order, the weight `W(A)` and
//!   the sequence-level rewrite identities behind stationarity,
//! * [`tree`] — binary trees and the bijection with dominated sequence pairs,
//! * [`collapse`] — the collapsing procedure, its interval criterion and the
//!   dual procedure,
//! * [`stationary`] — exact rational stationary distributions: the product
//!   formula, a brute-force generator oracle for general card dynamics, mass
//!   flow checks and the multitype conjecture harness,
//! * [`montecarlo`] — seedable simulation and sampling experiments, including
//!   finite-window measurements of the line measure and the random-walk gap
//!   law,
//! * [`cli`] — the subcommand surface of the `tasep` binary.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod collapse;
pub mod montecarlo;
pub mod seq;
pub mod stationary;
pub mod tree;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
