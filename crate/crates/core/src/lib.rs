//! Exact moments of the number of rolls of a biased `m`-faced die until a
//! prescribed word first appears.
//!
//! The closed moment formula lives in [`moments`]; [`cluster`] provides the
//! generating functions it is derived from and [`verify`] the independent
//! oracles (automaton dynamic program, brute-force enumeration, seeded
//! Monte Carlo) used to cross-check it.

pub mod cluster;
pub mod error;
#[doc(hidden)]
pub mod fuzzing;
pub mod moments;
pub mod poly;
pub mod rational;
pub mod sequences;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use rational::Ratio;
pub use words::{overlaps, Alphabet, OverlapSet, ProbModel, Word};
