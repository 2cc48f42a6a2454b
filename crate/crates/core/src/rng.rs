//! Deterministic random streams.
//!
//! Every consumer of randomness owns a stream derived from the master seed, a
//! [`Purpose`] tag and an index (chain, pair, replicate, ...). Streams are
//! independent ChaCha8 streams, so results never depend on how work is
//! scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Purpose {
    Initialization = 1,
    Exploration = 2,
    Swap = 3,
    Parity = 4,
    Replicate = 5,
    Oracle = 6,
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a child seed, e.g. for one of several independent PT copies.
pub fn child_seed(seed: u64, purpose: Purpose, index: u64) -> u64 {
    mix64(mix64(seed ^ mix64(purpose as u64)) ^ index.wrapping_mul(0xd605_bbb5_8c8a_bd4d))
}

/// The stream for `(seed, purpose, index)`.
pub fn stream(seed: u64, purpose: Purpose, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(mix64(seed ^ mix64(purpose as u64)));
    rng.set_stream(index);
    rng
}

/// `count` consecutive streams for one purpose.
pub fn streams(seed: u64, purpose: Purpose, count: usize) -> Vec<StreamRng> {
    (0..count as u64).map(|i| stream(seed, purpose, i)).collect()
}
