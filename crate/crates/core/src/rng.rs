//! Seeded generator for sampled sweeps.
//!
//! SplitMix64: the state advances by the golden-ratio increment
//! `0x9E3779B97F4A7C15` and each output is the state passed through the
//! finalizer with multipliers `0xBF58476D1CE4E5B9`, `0x94D049BB133111EB` and
//! shifts 30, 27, 31. Draws in `[0, n)` take the high 64 bits of
//! `next_u64() * n`, so a draw in `[0, 2^m)` is just the top m bits. These
//! rules are fixed so that other implementations reproduce the same streams.

pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
pub const MIX_1: u64 = 0xBF58_476D_1CE4_E5B9;
pub const MIX_2: u64 = 0x94D0_49BB_1331_11EB;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(MIX_1);
        z = (z ^ (z >> 27)).wrapping_mul(MIX_2);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `[0, n)`; `n` must be nonzero.
    pub fn below(&mut self, n: u64) -> u64 {
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Draw in `[lo, hi]`.
    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }
}
