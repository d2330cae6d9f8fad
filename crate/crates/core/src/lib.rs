//! Finite-scale computations for independence, return-time families and
//! symbolic constructions in topological dynamics.

pub mod avoidance;
pub mod bitset;
pub mod construct;
pub mod error;
pub mod independence;
pub mod selfcheck;
pub mod sets;
pub mod subshift;
pub mod syndetic;
pub mod word;

pub use error::{Error, Result};
