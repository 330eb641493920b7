//! Exact invariant measures and periodic orbits for shift actions of
//! finitely generated subsemigroups `S = <Σ>⁺` of free groups, and of `ℕ^d`
//! inside `ℤ^d`.
//!
//! All probabilities are exact rationals. The main pieces:
//!
//! * [`algebra`]: reduced words, generating sets, Cayley balls and trees.
//! * [`orbit`]: finite orbits as automata, periodic points from finite
//!   permutation groups, lifts to the free group, periodic measures.
//! * [`measure`]: the cylinder-measure interface, Markov tree chains, their
//!   extension to `F_d`, weak-* distances, non-extensible counterexamples.
//! * [`markovize`]: block Markov approximations of arbitrary invariant
//!   measures.
//! * [`reversible`]: window measures on `ℤ^d` from `ℕ^d`-invariant oracles.
//! * [`io`] and [`cli`]: file formats and the batch front end.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod io;
pub mod markovize;
pub mod measure;
pub mod orbit;
pub mod pattern;
pub mod rational;
pub mod reversible;

pub use error::{Error, Result};
pub use rational::Rational;
