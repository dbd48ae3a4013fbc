//! Random NK landscapes, generated as in the PBO suite.
//!
//! For position `i = 0..n` and seed multiplier `s`, the `k` neighbours are
//! drawn without replacement from all `n` positions (`i` itself allowed) by a
//! partial Fisher–Yates shuffle from the top, using
//! `uniform_sequence(k, k·s·(i+1))`; table `i` holds the `2^(k+1)` values of
//! `uniform_sequence(2^(k+1), 2·k·s·(i+1))`. Sub-function `i` reads the index
//! `x_i + Σ_j 2^(j+1) x_{e_ij}`, so `x_i` is the lowest bit. `s = 1` is the
//! suite's instance.

use alloc::vec::Vec;

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::problems::suite_rng::uniform_sequence;

#[derive(Debug, Clone, PartialEq)]
pub struct NkLandscape {
    n: usize,
    k: usize,
    seed: u64,
    neighbors: Vec<Vec<usize>>,
    tables: Vec<Vec<f64>>,
}

impl NkLandscape {
    pub fn new(n: usize, k: usize, seed: u64) -> Result<Self> {
        if n < 2 || k == 0 || k >= n || k > 16 {
            return Err(Error::InvalidDimension {
                n,
                reason: "NK landscapes need n >= 2 and 1 <= k < min(n, 17)",
            });
        }
        if seed == 0 {
            return Err(Error::Config("NK seed multiplier must be positive"));
        }
        let base = |i: usize| seed.wrapping_mul((k * (i + 1)) as u64);
        let neighbors: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                let r = uniform_sequence(k, base(i));
                let mut pool: Vec<usize> = (0..n).collect();
                (0..k)
                    .map(|t| {
                        let top = n - 1 - t;
                        let pick = libm::floor(r[t] * (top + 1) as f64) as usize;
                        pool.swap(top, pick.min(top));
                        pool[top]
                    })
                    .collect()
            })
            .collect();
        let tables = (0..n)
            .map(|i| uniform_sequence(1 << (k + 1), base(i).wrapping_mul(2)))
            .collect();
        Ok(Self {
            n,
            k,
            seed,
            neighbors,
            tables,
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn neighbors(&self) -> &[Vec<usize>] {
        &self.neighbors
    }

    pub fn tables(&self) -> &[Vec<f64>] {
        &self.tables
    }

    /// Table index read by sub-function `i`.
    pub fn index(&self, x: &BitString, i: usize) -> usize {
        self.neighbors[i]
            .iter()
            .enumerate()
            .fold(x.bit(i) as usize, |acc, (j, &e)| acc | (x.bit(e) as usize) << (j + 1))
    }
}

/// Average of the `n` sub-function values.
pub fn nk_eval(x: &BitString, inst: &NkLandscape) -> f64 {
    debug_assert_eq!(x.len(), inst.n);
    let total: f64 = (0..inst.n).map(|i| inst.tables[i][inst.index(x, i)]).sum();
    total / inst.n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    #[test]
    fn smallest_instance_in_unit_interval() {
        let inst = NkLandscape::new(2, 1, 1).unwrap();
        for s in ["00", "01", "10", "11"] {
            let v = nk_eval(&BitString::parse(s).unwrap(), &inst);
            assert!(v > 0.0 && v < 1.0);
        }
        assert!(NkLandscape::new(1, 1, 1).is_err());
        assert!(NkLandscape::new(5, 0, 1).is_err());
        assert!(NkLandscape::new(5, 1, 0).is_err());
    }

    #[test]
    fn seed_fixes_landscape() {
        let a = NkLandscape::new(30, 1, 7).unwrap();
        let b = NkLandscape::new(30, 1, 7).unwrap();
        assert_eq!(a, b);
        let x = BitString::random(30, &mut RngStream::from_seed(2)).unwrap();
        assert_eq!(nk_eval(&x, &a), nk_eval(&x, &a));
        assert_ne!(a, NkLandscape::new(30, 1, 8).unwrap());
    }

    #[test]
    fn index_layout() {
        let inst = NkLandscape::new(4, 1, 3).unwrap();
        let x = BitString::parse("1010").unwrap();
        for i in 0..4 {
            let j = inst.neighbors()[i][0];
            assert_eq!(inst.index(&x, i), x.bit(i) as usize + 2 * x.bit(j) as usize);
        }
    }
}
