//! Seed splitting.
//!
//! Every random stage draws its generator from `(master seed, stream tag,
//! index)` through a SplitMix64-style mixer, so that sampling, erasure,
//! learning, and per-trial work are reproducible independently of each other.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Stream tags used by the crate. Callers may use any other value for
/// their own streams.
pub mod stream {
    pub const SAMPLE: u64 = 0x5341_4d50;
    pub const GIBBS: u64 = 0x4749_4242;
    pub const ERASE: u64 = 0x4552_4153;
    pub const GENERATE: u64 = 0x4745_4e45;
    pub const GAME: u64 = 0x4741_4d45;
    pub const QUERY: u64 = 0x5155_4552;
    pub const TRIAL: u64 = 0x5452_4941;
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of sub-stream `(tag, index)` of `seed`.
pub fn derive(seed: u64, tag: u64, index: u64) -> u64 {
    splitmix(splitmix(splitmix(seed) ^ tag) ^ index)
}

pub fn rng(seed: u64, tag: u64, index: u64) -> Rng {
    Rng::seed_from_u64(derive(seed, tag, index))
}
