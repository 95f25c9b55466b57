//! Seeded random source for the simulator.
//!
//! The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`
//! (rand_core 0.6, which expands the seed with PCG32). Draws are built only
//! from `next_u64`:
//!
//! - `chance(p)`: take the top 53 bits of `next_u64` as a uniform number in
//!   `[0, 1)` and return whether it is below `p`.
//! - `below(n)`: `(next_u64 as u128 * n) >> 64`.
//!
//! Every template draws in a fixed, documented order, so a seed maps to one
//! event log.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone)]
pub struct SimRng(ChaCha8Rng);

impl SimRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit_f64() < p
    }

    /// Uniform-ish integer in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }
}
