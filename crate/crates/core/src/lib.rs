//! Quantum-cognition diagnostics for multidimensional relevance judgments.
//!
//! Documents are unit vectors in two-dimensional real Hilbert spaces, one
//! basis per relevance dimension, built from per-query min-max normalized
//! ranking scores. On top of that the crate evaluates order effects,
//! CHSH-type and n-settings Bell inequalities over document pairs, and
//! Schmidt-rank separability of the composite states.

pub mod bell;
pub mod cli;
pub mod composite;
pub mod error;
pub mod hilbert;
pub mod loglab;

pub use error::{Error, Result};
