//! Seeded random sources and stable seed derivation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The random source every search run owns.
pub type SearchRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SearchRng {
    ChaCha8Rng::seed_from_u64(seed)
}

// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds `parts` into `base`. Stable across platforms and compiler versions,
/// unlike `std::hash`.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(mix64(base), |acc, &p| {
        mix64(acc ^ p.wrapping_add(0x9e37_79b9_7f4a_7c15))
    })
}

/// FNV-1a hash of a tag string, for feeding names into [`derive_seed`].
pub fn tag(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}
