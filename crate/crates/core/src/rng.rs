//! Random streams.
//!
//! Every stream is a xoshiro256++ generator whose 256-bit state is expanded
//! from a single `u64` with SplitMix64 (the reference seeding procedure of
//! the xoshiro authors). A stream for replicate `r` of a run with master seed
//! `s` is seeded with [`replicate_seed(s, r)`](replicate_seed).
//!
//! A step of the walk draws one `u64` value `v` and moves up iff
//! `(v >> 11) * 2^-53 < p_up`. Together these rules pin down every path
//! bit-for-bit, so other implementations can reproduce them.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

/// Identifier written next to every output that depends on random draws.
pub const ALGORITHM_ID: &str = "xoshiro256pp-splitmix64-v1";

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output function applied to `x`.
#[inline]
pub fn mix64(mut x: u64) -> u64 {
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of replicate `index` under `master`: `mix64(master + (index + 1)·γ)`
/// with γ the 64-bit golden-ratio increment, all arithmetic wrapping.
#[inline]
pub fn replicate_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// A uniform stream of doubles in `[0, 1)` with 53 bits of resolution.
#[derive(Clone, Debug)]
pub struct Stream(Xoshiro256PlusPlus);

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub fn for_replicate(master: u64, index: u64) -> Self {
        Self::new(replicate_seed(master, index))
    }

    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
