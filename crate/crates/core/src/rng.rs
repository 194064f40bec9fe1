//! Deterministic random streams.
//!
//! All sampling in the crate is driven by SplitMix64 (the mixer and increment
//! constants are the ones from Steele, Lea & Flood, "Fast splittable
//! pseudorandom number generators"). The generator is a pure function of its
//! 64-bit state, so seeded runs reproduce bit-identical sample sequences on
//! every platform, and `split_off` derives decorrelated child streams for
//! indexed trials without consuming the parent.

use num_complex::Complex64;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Child stream for trial `index`, independent of how much of the parent
    /// stream has been consumed so far.
    pub fn split_off(&self, index: u64) -> SplitMix64 {
        let salt = mix64(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
        SplitMix64::new(mix64(self.state ^ salt))
    }

    /// Uniform double in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform double in `(lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal via Box-Muller. The sine half of each pair is
    /// discarded to keep the state sequence trivially predictable.
    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform(); // (0, 1]
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Complex Gaussian with independent standard normal parts.
    pub fn complex_normal(&mut self) -> Complex64 {
        Complex64::new(self.normal(), self.normal())
    }

    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }
}
