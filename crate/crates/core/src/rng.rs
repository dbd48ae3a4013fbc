//! Reproducible random streams.
//!
//! Every run owns one [`RngStream`]: a ChaCha8 generator whose 256-bit key is
//! the little-endian concatenation of four consecutive SplitMix64 outputs
//! started from a 64-bit seed. Per-run seeds are derived from
//! `(master_seed, cell_index, run_index)` with [`derive_seed`], so the seed
//! assigned to a job never depends on scheduling order.

use rand::{Error as RandError, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// One step of SplitMix64 on `state`, returning the mixed output.
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for run `run_index` of grid cell `cell_index`.
pub fn derive_seed(master_seed: u64, cell_index: u64, run_index: u64) -> u64 {
    let mut state = master_seed;
    let a = splitmix64(&mut state);
    let mut state = a ^ cell_index.wrapping_mul(GOLDEN_GAMMA);
    let b = splitmix64(&mut state);
    let mut state = b ^ run_index.wrapping_mul(0xD1B5_4A32_D192_ED03);
    splitmix64(&mut state)
}

/// Seeded random stream used by every stochastic operation.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn from_seed(seed: u64) -> Self {
        let mut state = seed;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        Self {
            seed,
            inner: ChaCha8Rng::from_seed(key),
        }
    }

    /// Stream for run `run_index` of grid cell `cell_index`.
    pub fn for_run(master_seed: u64, cell_index: u64, run_index: u64) -> Self {
        Self::from_seed(derive_seed(master_seed, cell_index, run_index))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl RngCore for RngStream {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), RandError> {
        self.inner.try_fill_bytes(dest)
    }
}
