//! Seeded, counter-based random streams.
//!
//! Every consumer derives its own ChaCha8 key from `(seed, label)`; per-signal
//! work additionally selects the ChaCha stream by signal index, so results do
//! not depend on evaluation order or thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a textual domain label into a seed.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    label
        .bytes()
        .fold(splitmix(seed), |acc, b| splitmix(acc ^ u64::from(b)))
}

/// A sequential stream for one named phase.
pub fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, label))
}

/// The stream for signal `index` within a named phase.
pub fn signal_stream(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    let mut rng = stream(seed, label);
    rng.set_stream(index);
    rng
}
