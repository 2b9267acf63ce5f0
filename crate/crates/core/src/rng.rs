//! Seeded, portable randomness.
//!
//! SplitMix64 (Steele, Lea & Flick; the generator behind Java's
//! `SplittableRandom`) with Gaussian variates via the Box-Muller
//! transform. Every variate consumes a fixed number of raw draws, so
//! output never depends on evaluation order and golden files reproduce
//! across platforms.

use core::f64::consts::PI;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Murmur-style 64-bit finalizer used by SplitMix64.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Generator for substream `index` of `seed`: independent-looking
    /// streams derivable without sequencing, so parallel consumers agree
    /// with any sequential schedule.
    pub fn substream(seed: u64, index: u64) -> Self {
        Self::new(mix64(seed ^ mix64(index.wrapping_mul(GOLDEN_GAMMA).wrapping_add(1))))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in the half-open unit interval `(0, 1]`, built from the top
    /// 53 bits. Never zero, so it is a safe Box-Muller radius input.
    pub fn next_unit(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal variate; consumes exactly two raw draws.
    pub fn next_normal(&mut self) -> f64 {
        let u1 = self.next_unit();
        let u2 = self.next_unit();
        libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * PI * u2)
    }

    /// Uniform integer in `[0, bound)`; consumes exactly one raw draw.
    pub fn next_below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }
}
