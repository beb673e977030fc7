//! The one place where the pseudo-random generator is chosen.
//!
//! Every random draw in the crate goes through [`stream`], which seeds a
//! xoshiro256++ generator through SplitMix64. Both algorithms are specified
//! bit-for-bit and their `rand_xoshiro` implementations are value-stable
//! across platforms, so seeded fixtures stay valid. Seeding is cheap, which
//! matters because every element hashed in random-allocation mode gets its
//! own stream.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

pub type ExperimentRng = Xoshiro256PlusPlus;

/// SplitMix64 finaliser, used to combine seeds with stream identifiers.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from a parent seed and a list of stream indices.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(mix64(seed), |acc, &p| mix64(acc ^ mix64(p)))
}

/// A generator for the stream identified by `seed` and `path`.
pub fn stream(seed: u64, path: &[u64]) -> ExperimentRng {
    Xoshiro256PlusPlus::seed_from_u64(derive_seed(seed, path))
}
