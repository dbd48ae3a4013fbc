//! The deterministic generator the PBO suite uses to build its instances
//! (dummy positions, NK neighbourhoods and tables).
//!
//! A Park–Miller "minimal standard" generator (multiplier 16807, modulus
//! 2^31 - 1, Schrage's decomposition) feeding a 32-slot shuffle table. Only
//! instance construction uses it; algorithms draw from [`crate::RngStream`].

use alloc::vec::Vec;

const MULTIPLIER: i64 = 16_807;
const MODULUS: i64 = 2_147_483_647;
const QUOTIENT: i64 = 127_773;
const REMAINDER: i64 = 2_836;

/// One step of the Park–Miller recurrence.
pub fn lcg_next(seed: i64) -> i64 {
    let hi = libm::floor(seed as f64 / QUOTIENT as f64) as i64;
    let next = MULTIPLIER * (seed - hi * QUOTIENT) - REMAINDER * hi;
    if next < 0 {
        next + MODULUS
    } else {
        next
    }
}

/// `count` numbers in `(0, 1)` from `seed`.
pub fn uniform_sequence(count: usize, seed: u64) -> Vec<f64> {
    let mut seed = seed as i64;
    let mut table = [0i64; 32];
    for i in (0..40).rev() {
        seed = lcg_next(seed);
        if i < 32 {
            table[i] = seed;
        }
    }
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let fresh = lcg_next(seed);
        let slot = libm::floor(seed as f64 / 67_108_865.0) as usize;
        seed = table[slot];
        table[slot] = fresh;
        let v = seed as f64 / 2.147483647e9;
        out.push(if v == 0.0 { 1e-99 } else { v });
    }
    out
}
