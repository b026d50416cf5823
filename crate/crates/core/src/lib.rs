//! Random k-cycle shuffles on a deck holding `l` indistinguishable copies of
//! each of `m` card types.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`perm`]: permutations, the k-cycle walk, the repeated-card quotient and
//!   brute-force distributions on small symmetric groups.
//! * [`partitions`]: partitions of `n`, exact dimensions and characters of the
//!   symmetric group, the main-term product for character ratios and Kostka
//!   numbers with hook-shaped content.
//! * [`measures`]: the auxiliary "set aside fixed points, then randomize the
//!   rest" measures, their Fourier coefficients and exact probability masses.
//! * [`distances`]: exact and empirical total variation, Plancherel bounds and
//!   the Poisson / Gaussian limiting profiles.
//!
//! Logarithms are natural throughout.

pub mod distances;
pub mod error;
pub mod measures;
pub mod partitions;
pub mod perm;
pub mod rng;
pub(crate) mod sum;

pub use error::{Error, Result};
