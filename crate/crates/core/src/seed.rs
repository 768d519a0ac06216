//! Seed streams.
//!
//! Replicate `r` of a run with master seed `m` draws from
//! `ChaCha8Rng::seed_from_u64(mix(m, r))`, where
//!
//! ```text
//! mix(m, r) = splitmix64(m ^ splitmix64(r + 0x9E3779B97F4A7C15))
//! ```
//!
//! and `splitmix64` is the standard SplitMix64 output function. The draw
//! counter is the ChaCha stream position. Results therefore depend only on
//! `(m, r)`, never on which worker ran the replicate.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub type SimRng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
pub const fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub const fn mix(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(GOLDEN)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    pub fn master(self) -> u64 {
        self.0
    }

    /// Child seed for replicate `rep`.
    pub fn child(self, rep: u64) -> u64 {
        mix(self.0, rep)
    }

    /// Independent sub-stream, e.g. one per model in a paired experiment.
    pub fn derive(self, tag: u64) -> Seed {
        Seed(mix(self.0 ^ 0xD1B5_4A32_D192_ED03, tag))
    }

    pub fn rng(self) -> SimRng {
        SimRng::seed_from_u64(self.0)
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}
