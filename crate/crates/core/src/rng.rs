//! Counter-based randomness.
//!
//! Every random quantity in the crate is addressed by `(seed, index)` rather
//! than drawn from a sequential stream, so trials and per-subset coin flips
//! can be regenerated in any order. The mixing function is the SplitMix64
//! finalizer; changing it changes every sampled hypergraph, so its identity
//! is recorded in reports as [`RNG_ALGORITHM`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Version tag written into every report.
pub const RNG_ALGORITHM: &str = "splitmix64-counter+chacha8/v1";

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The `index`-th element of the SplitMix64 sequence started at `seed`.
#[inline]
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    mix64(seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1))))
}

/// Uniform value in `[0, 1)` with 53 bits of precision, addressed by `(seed, index)`.
#[inline]
pub fn uniform_at(seed: u64, index: u64) -> f64 {
    (derive_seed(seed, index) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Sequential generator for the places where a stream is natural
/// (binomial edge-count draws, rejection sampling).
pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
