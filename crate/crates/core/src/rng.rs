//! Deterministic seeding helpers.
//!
//! Every random draw in the crate flows through ChaCha8 streams seeded by
//! explicit 64-bit keys, so identical seeds reproduce identical output on any
//! platform. Sub-streams (per fold, per patient) derive their keys by
//! counter-based splitting with SplitMix64 instead of sharing one stream.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// FNV-1a over bytes; stable across platforms and releases.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Derives the key of sub-stream `index` from a master seed.
pub fn split_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(0x632be59bd9b4e019)))
}

/// The crate's pseudo-random generator: ChaCha8, a fixed, named, portable
/// algorithm.
pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed component derived from sorted patient ids, making downstream fold
/// assignment independent of input row order.
pub fn seed_from_ids<S: AsRef<str>>(ids: &[S], user_seed: u64) -> u64 {
    let mut sorted: Vec<&str> = ids.iter().map(|s| s.as_ref()).collect();
    sorted.sort_unstable();
    let joined = sorted.join("\n");
    splitmix64(fnv1a64(joined.as_bytes()) ^ user_seed)
}
