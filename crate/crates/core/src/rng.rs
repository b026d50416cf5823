//! Deterministic per-chain random streams.
//!
//! Every Monte Carlo chain draws from its own ChaCha8 stream. The 256-bit key
//! is expanded from the user's 64-bit seed with `SeedableRng::seed_from_u64`,
//! and the 64-bit ChaCha stream id is `(namespace << 40) | chain_index`. The
//! namespace separates independent sources (walk chains, uniform reference
//! draws, ...) run under one seed. Because a chain's stream depends only on
//! `(seed, namespace, chain_index)`, results do not depend on how chains are
//! scheduled across workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The random stream type used by every sampler in this crate.
pub type Stream = ChaCha8Rng;

const CHAIN_BITS: u32 = 40;

/// Namespaces for the sources that share a seed.
pub mod namespace {
    pub const WALK: u64 = 1;
    pub const UNIFORM: u64 = 2;
    pub const NU: u64 = 3;
    pub const NU_SYM: u64 = 4;
    pub const SET_ASIDE: u64 = 5;
    pub const MISC: u64 = 15;
}

/// A family of streams indexed by chain number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamFamily {
    pub seed: u64,
    pub namespace: u64,
}

impl StreamFamily {
    pub fn new(seed: u64, namespace: u64) -> Self {
        assert!(namespace < (1 << (64 - CHAIN_BITS)), "namespace out of range");
        StreamFamily { seed, namespace }
    }

    pub fn chain(&self, index: u64) -> Stream {
        assert!(index < (1 << CHAIN_BITS), "chain index out of range");
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream((self.namespace << CHAIN_BITS) | index);
        rng
    }
}

/// Shorthand for a single stream, used by tests and one-off draws.
pub fn stream(seed: u64, namespace: u64, index: u64) -> Stream {
    StreamFamily::new(seed, namespace).chain(index)
}
