//! Reproducible seed derivation.
//!
//! Every random object in the crate is driven by a [`Seed`]. Child seeds are
//! derived with a fixed mixing rule so that a cell of an experiment, or a
//! single trial inside it, can be re-run in isolation and parallel runs agree
//! with serial ones:
//!
//! ```text
//! child(parent, i) = splitmix64(parent + 0x9E3779B97F4A7C15 * (i + 1))
//! ```
//!
//! where `splitmix64` is the standard SplitMix64 finalizer and all arithmetic
//! wraps modulo 2^64.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    pub fn new(value: u64) -> Self {
        Seed(value)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Derives the seed of child stream `index`.
    pub fn child(self, index: u64) -> Seed {
        Seed(splitmix64(
            self.0
                .wrapping_add(GOLDEN_GAMMA.wrapping_mul(index.wrapping_add(1))),
        ))
    }

    /// Generator used for every sampled object in the crate.
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl From<u64> for Seed {
    fn from(value: u64) -> Self {
        Seed(value)
    }
}
