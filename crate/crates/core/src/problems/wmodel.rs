//! W-model layers on top of OneMax or LeadingOnes.
//!
//! A genome is reduced by (1) keeping only the non-dummy positions,
//! (2) majority votes over consecutive blocks (neutrality) and (3) an XOR
//! mixing of consecutive blocks (epistasis); the base function is evaluated on
//! the reduced string and its value is finally remapped (ruggedness).
//!
//! Dummy positions and the epistasis mixing follow the PBO suite definitions
//! bit for bit, so a catalog entry with `dummy_seed = 10000` reproduces the
//! suite's instance 1.

use alloc::vec::Vec;

use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::problems::suite_rng::uniform_sequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WBase {
    OneMax,
    LeadingOnes,
}

/// Fitness remappings applied to the base value `y ∈ [0..m]`, where `m` is the
/// length of the reduced string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ruggedness {
    /// `y = m ↦ ⌈m/2⌉ + 1`; otherwise `⌊y/2⌋ + 1` for even `m`, `⌈y/2⌉ + 1` for odd `m`.
    Plateau,
    /// Swaps neighbouring values by parity: below the optimum, values with the
    /// same parity as `m` move up by one and the others move down by one.
    Parity,
    /// Reverses the order of values inside consecutive blocks of five counted
    /// down from `m`; `m` itself stays fixed.
    BlockReversal,
}

impl Ruggedness {
    pub fn apply(&self, y: usize, m: usize) -> f64 {
        debug_assert!(y <= m);
        match self {
            Ruggedness::Plateau => {
                if y == m {
                    (m.div_ceil(2) + 1) as f64
                } else if m % 2 == 0 {
                    (y / 2 + 1) as f64
                } else {
                    (y.div_ceil(2) + 1) as f64
                }
            }
            Ruggedness::Parity => {
                if y == m {
                    y as f64
                } else if y % 2 == m % 2 {
                    (y + 1) as f64
                } else {
                    y.saturating_sub(1) as f64
                }
            }
            Ruggedness::BlockReversal => {
                if y == m {
                    return m as f64;
                }
                let full = m / 5;
                let head = m - full * 5;
                if y < head {
                    (head - 1 - y) as f64
                } else {
                    // y = m - 5j + k, k in 0..5  ->  m - 5j + (4 - k)
                    let off = y - head;
                    let base = head + (off / 5) * 5;
                    (base + 4 - off % 5) as f64
                }
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Ruggedness::Plateau => "plateau",
            Ruggedness::Parity => "parity",
            Ruggedness::BlockReversal => "block-reversal",
        }
    }
}

/// Optional W-model layers. All `None` is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WModelLayers {
    /// Number of positions kept by the dummy layer.
    pub dummy_m: Option<usize>,
    /// Seed used to choose which positions the dummy layer keeps.
    pub dummy_seed: u64,
    pub neutrality_mu: Option<usize>,
    pub epistasis_nu: Option<usize>,
    pub ruggedness: Option<Ruggedness>,
}

impl WModelLayers {
    pub fn identity() -> Self {
        Self::default()
    }
}

/// W-model instance for a fixed dimension.
#[derive(Debug, Clone)]
pub struct WModel {
    n: usize,
    base: WBase,
    layers: WModelLayers,
    kept: Option<Vec<usize>>,
    reduced_len: usize,
}

/// `m` distinct positions of `0..n`, ascending.
///
/// Position `i < m` of the identity permutation is swapped with position
/// `⌊r_i n⌋`, `r` drawn from [`uniform_sequence`] with `seed`; the first `m`
/// entries are kept.
pub fn dummy_positions(n: usize, m: usize, seed: u64) -> Vec<usize> {
    let r = uniform_sequence(m, seed);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..m {
        // same operation order as the suite's floating-point expression
        let j = libm::floor(r[i] * 1e4 / 1e4 * n as f64) as usize;
        idx.swap(i, j.min(n - 1));
    }
    idx.truncate(m);
    idx.sort_unstable();
    idx
}

/// Majority vote over consecutive blocks of `mu`; a trailing partial block is dropped.
pub fn neutrality(bits: &[bool], mu: usize) -> Vec<bool> {
    bits.chunks_exact(mu)
        .map(|block| 2 * block.iter().filter(|&&b| b).count() >= mu)
        .collect()
}

/// Position left out of output bit `i` in a block of `v` bits, if any.
///
/// The suite leaves out `j` with `v - j - 1 = (v - i - 2) rem 4`, using a
/// truncating remainder; the last output bit (negative remainder) leaves out
/// nothing. For `v = 4` this is `j = i + 1`.
fn left_out(v: usize, i: usize) -> Option<usize> {
    let r = (v as i64 - i as i64 - 2) % 4;
    (0..v as i64).contains(&r).then(|| v - 1 - r as usize)
}

/// Epistasis mixing over consecutive blocks of `nu` bits; a trailing partial
/// block of `v < nu` bits is mixed with block size `v`. Output bit `i` of a
/// block is the XOR of the block's bits except the one given by the suite
/// rule (see [`left_out`]). The block `10…0` maps to all ones.
pub fn epistasis(bits: &[bool], nu: usize) -> Vec<bool> {
    let mut out = Vec::with_capacity(bits.len());
    for block in bits.chunks(nu) {
        let v = block.len();
        let parity = block.iter().fold(false, |acc, &b| acc ^ b);
        for i in 0..v {
            out.push(match left_out(v, i) {
                Some(j) => parity ^ block[j],
                None => parity,
            });
        }
    }
    out
}

impl WModel {
    pub fn new(n: usize, base: WBase, layers: WModelLayers) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension {
                n,
                reason: "W-model needs at least one position",
            });
        }
        let mut len = n;
        let kept = match layers.dummy_m {
            Some(m) if m == 0 || m > n => {
                return Err(Error::Config("dummy layer must keep between 1 and n positions"))
            }
            Some(m) => {
                len = m;
                Some(dummy_positions(n, m, layers.dummy_seed))
            }
            None => None,
        };
        if let Some(mu) = layers.neutrality_mu {
            if mu == 0 || mu > len {
                return Err(Error::Config("neutrality block size must lie in [1, reduced length]"));
            }
            len /= mu;
        }
        if let Some(nu) = layers.epistasis_nu {
            if nu == 0 || nu > len {
                return Err(Error::Config("epistasis block size must lie in [1, reduced length]"));
            }
        }
        Ok(Self {
            n,
            base,
            layers,
            kept,
            reduced_len: len,
        })
    }

    /// Length of the string the base function sees.
    pub fn reduced_len(&self) -> usize {
        self.reduced_len
    }

    pub fn layers(&self) -> &WModelLayers {
        &self.layers
    }

    pub fn base(&self) -> WBase {
        self.base
    }

    pub fn reduce(&self, x: &BitString) -> Vec<bool> {
        debug_assert_eq!(x.len(), self.n);
        let mut bits: Vec<bool> = match &self.kept {
            Some(pos) => pos.iter().map(|&i| x.get(i)).collect(),
            None => x.to_bools(),
        };
        if let Some(mu) = self.layers.neutrality_mu {
            bits = neutrality(&bits, mu);
        }
        if let Some(nu) = self.layers.epistasis_nu {
            bits = epistasis(&bits, nu);
        }
        bits
    }

    pub fn evaluate(&self, x: &BitString) -> f64 {
        let bits = self.reduce(x);
        let y = match self.base {
            WBase::OneMax => bits.iter().filter(|&&b| b).count(),
            WBase::LeadingOnes => bits.iter().take_while(|&&b| b).count(),
        };
        match self.layers.ruggedness {
            Some(r) => r.apply(y, self.reduced_len),
            None => y as f64,
        }
    }

    /// Largest attainable value. The all-ones reduced string is reachable
    /// (dummy and neutrality layers keep all-ones, and epistasis maps each
    /// block `10…0` to all ones), and every remapping peaks at `y = m`.
    pub fn optimum(&self) -> f64 {
        let m = self.reduced_len;
        match self.layers.ruggedness {
            Some(r) => (0..=m).map(|y| r.apply(y, m)).fold(f64::MIN, f64::max),
            None => m as f64,
        }
    }
}

/// One-shot evaluation of `x` through `layers` on `base`.
pub fn apply_wmodel(x: &BitString, layers: &WModelLayers, base: WBase) -> Result<f64> {
    Ok(WModel::new(x.len(), base, *layers)?.evaluate(x))
}
