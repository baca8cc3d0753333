//! Counter-based RNG derivation for reproducible parallel Monte Carlo.
//!
//! Every randomized routine in this crate derives one independent generator
//! per unit of work (trial, baseline draw, ...) from a single user seed.
//! Work units can then run in any order — or on any number of threads — and
//! still consume exactly the same random values, which is what makes output
//! files byte-identical across `--threads` settings.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Returns the generator for work unit `index` under `seed`.
///
/// Uses one ChaCha stream per index, so generators for different indices
/// never overlap no matter how many values each unit draws.
pub fn unit_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Derives a sub-seed for a named domain of work (e.g. "random baselines of
/// the third (W, M) pair") so nested units can use [`unit_rng`] locally
/// without colliding with any other domain.
pub fn derive_seed(seed: u64, domain: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(domain)).wrapping_add(index))
}

/// SplitMix64 finalizer; a cheap, well-distributed 64-bit mixer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
