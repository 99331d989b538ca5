//! Seeded random number streams.
//!
//! Every randomized operation takes an explicit master seed and derives named
//! sub-streams from it, so that e.g. the coin flips and the point draws of a
//! sampler run never consume each other's numbers. Changing one knob of an
//! experiment therefore does not desynchronize the remaining randomness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(seed: u64, name: &str) -> u64 {
    let mut h = FNV_OFFSET;
    for b in seed.to_le_bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(FNV_PRIME);
    }
    for b in name.as_bytes() {
        h = (h ^ u64::from(*b)).wrapping_mul(FNV_PRIME);
    }
    h
}

/// Deterministic generator for the sub-stream `name` of a master seed.
pub fn substream(master: u64, name: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(fnv1a(master, name))
}
