//! Seeded random streams.
//!
//! Every run owns a [`ChaCha8Rng`]. Independent streams are derived from a
//! master seed and a list of integer labels with a SplitMix64 fold, so a
//! stream depends only on its labels and never on scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes `labels` into `master`, one SplitMix64 round per label.
pub fn derive_seed(master: u64, labels: &[u64]) -> u64 {
    labels
        .iter()
        .fold(splitmix64(master), |acc, &l| splitmix64(acc ^ splitmix64(l)))
}

pub fn stream(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}
