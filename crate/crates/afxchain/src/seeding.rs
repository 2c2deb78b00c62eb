//! Deterministic derivation of per-task RNG streams from one global seed.
//!
//! Every randomized stage (dry synthesis, parameter sampling, weight init,
//! epoch shuffling) draws from its own stream so that results do not depend
//! on evaluation order or thread scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer; decorrelates nearby (seed, stream) pairs.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a child seed from a global seed and a stream index.
pub fn derive(seed: u64, stream: u64) -> u64 {
    mix64(mix64(seed) ^ mix64(stream.wrapping_mul(0xa076_1d64_78bd_642f)))
}

/// RNG for a named stage and item index, e.g. one dataset sample.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(seed, stream))
}

/// Stream identifiers used across the crate, kept here so no two
/// stages collide on the same derived seed.
pub mod streams {
    pub const DRY_SYNTH: u64 = 0x01;
    pub const CHAIN_PARAMS: u64 = 0x02;
    pub const SPLIT_ASSIGN: u64 = 0x03;
    pub const MODEL_INIT: u64 = 0x04;
    pub const EPOCH_SHUFFLE: u64 = 0x05;
}
