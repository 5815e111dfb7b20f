//! Seed derivation and RNG streams.
//!
//! Every example owns an independent ChaCha stream derived from a base seed
//! and its index, so generation is reproducible and embarrassingly parallel.
//! Scenario parameter draws and measurement draws use distinct stream ids of
//! the same seeded generator to keep them statistically independent.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream id for scenario parameter draws (DOAs, powers, interference shape).
const STREAM_PARAMS: u64 = 1;
/// Stream id for source signal draws.
const STREAM_SOURCES: u64 = 2;
/// Stream id for interference texture/speckle draws.
const STREAM_INTERFERENCE: u64 = 3;
/// Stream id for thermal noise draws.
const STREAM_NOISE: u64 = 4;

/// SplitMix64 finalizer; the standard 64-bit avalanche mix.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a child seed from a base seed and one salt value.
pub fn mix_seed(base: u64, salt: u64) -> u64 {
    splitmix64(base ^ splitmix64(salt))
}

/// Derive a child seed from a base seed and two salt values.
pub fn mix_seed3(base: u64, a: u64, b: u64) -> u64 {
    splitmix64(base ^ splitmix64(a) ^ splitmix64(b).rotate_left(32))
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// RNG for scenario parameter draws under `seed`.
pub fn param_rng(seed: u64) -> ChaCha8Rng {
    stream_rng(seed, STREAM_PARAMS)
}

pub(crate) fn source_rng(seed: u64) -> ChaCha8Rng {
    stream_rng(seed, STREAM_SOURCES)
}

pub(crate) fn interference_rng(seed: u64) -> ChaCha8Rng {
    stream_rng(seed, STREAM_INTERFERENCE)
}

pub(crate) fn noise_rng(seed: u64) -> ChaCha8Rng {
    stream_rng(seed, STREAM_NOISE)
}
