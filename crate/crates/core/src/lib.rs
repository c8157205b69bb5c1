//! Well-quasiorders on labeled forests, ordinals below ε₀, and the
//! classification of regular k-partitions of `{0,1}^ω` given by Muller
//! k-acceptors.

pub mod builder;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod forest;
pub mod games;
pub mod graph;
pub mod muller;
pub mod ordinal;
pub mod words;

pub use error::{Error, Result};

/// A color (partition value), `0..k`.
pub type Color = u32;
