//! BB84 prepare-and-measure simulation with finite-key security analysis,
//! one-shot entropy calculators and the quantum capacity of the amplitude
//! damping channel.
//!
//! Logarithms are base 2 throughout.

pub mod capacity;
pub mod entropy;
mod error;
pub mod numeric;
pub mod protocol;
pub mod quantum;
pub mod rng;
pub mod security;

pub use error::{Error, Result};
