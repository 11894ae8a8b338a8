//! Random streams and per-run seed derivation.
//!
//! Every run owns one [`RunRng`]: xoshiro256++ seeded through SplitMix64
//! (`seed_from_u64`). Run seeds come from [`derive_seed`], a 64-bit FNV-1a
//! hash of the UTF-8 key `"{base_seed}/{variant}/{function}/{run_index}"`
//! passed through the SplitMix64 finalizer. Both algorithms are small and
//! widely implemented, so another implementation can reproduce the seed
//! schedule record for record.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::benchmarks::FnId;
use crate::variant::VariantSpec;

pub type RunRng = Xoshiro256PlusPlus;

/// Name of the generator, recorded in plan manifests.
pub const RNG_NAME: &str = "xoshiro256++ (SplitMix64 seeding), seeds = splitmix64(fnv1a64(\"base/variant/function/run\"))";

pub fn rng_from_seed(seed: u64) -> RunRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

pub fn splitmix64_mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Hash an arbitrary key string into a seed.
pub fn seed_for_key(key: &str) -> u64 {
    splitmix64_mix(fnv1a64(key.as_bytes()))
}

/// Seed of run `run_index` in cell (`variant`, `function`).
pub fn derive_seed(base_seed: u64, variant: VariantSpec, function: FnId, run_index: usize) -> u64 {
    seed_for_key(&format!("{base_seed}/{variant}/{function}/{run_index}"))
}
