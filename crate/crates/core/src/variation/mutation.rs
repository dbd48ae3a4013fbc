use alloc::vec::Vec;

use rand::Rng;

use crate::bitstring::BitString;
use crate::error::{Error, Result};

/// Power-law exponent of fast mutation.
pub const DEFAULT_FAST_BETA: f64 = 1.5;

/// Mutation operator family, independent of the dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MutationKind {
    /// Strength drawn from Bin(n, p) conditioned on being positive.
    /// `rate: None` means `p = 1/n`.
    StandardBit { rate: Option<f64> },
    /// Strength drawn from the power law `ℓ^-β` on `[1..⌊n/2⌋]`.
    Fast { beta: f64 },
}

impl MutationKind {
    pub const fn standard() -> Self {
        Self::StandardBit { rate: None }
    }

    pub const fn fast() -> Self {
        Self::Fast {
            beta: DEFAULT_FAST_BETA,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::StandardBit { .. } => "sbm",
            Self::Fast { .. } => "fast",
        }
    }
}

impl Default for MutationKind {
    fn default() -> Self {
        Self::standard()
    }
}

/// Mutation operator instantiated for a dimension `n`.
///
/// The strength distribution is stored as a cumulative table over
/// `ℓ = 1..=support`; a strength is drawn with one uniform variate and a
/// binary search.
#[derive(Debug, Clone)]
pub struct MutationOperator {
    kind: MutationKind,
    n: usize,
    rate: f64,
    beta: f64,
    norm_const: f64,
    pmf: Vec<f64>,
    cdf: Vec<f64>,
}

/// `Σ_{i=1}^{half_n} i^{-β}`.
pub fn fast_norm_const(half_n: usize, beta: f64) -> f64 {
    // smallest terms first
    (1..=half_n).rev().map(|i| libm::pow(i as f64, -beta)).sum()
}

fn cumulative(pmf: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut cdf: Vec<f64> = pmf
        .iter()
        .map(|p| {
            acc += p;
            acc
        })
        .collect();
    if let Some(last) = cdf.last_mut() {
        *last = 1.0;
    }
    cdf
}

impl MutationOperator {
    pub fn new(kind: MutationKind, n: usize) -> Result<Self> {
        match kind {
            MutationKind::StandardBit { rate } => {
                Self::standard_bit(n, rate.unwrap_or(1.0 / n.max(1) as f64))
            }
            MutationKind::Fast { beta } => Self::fast(n, beta),
        }
    }

    /// Standard bit mutation with rate `p`, conditioned on flipping at least one bit.
    ///
    /// `p = 1` is accepted only for `n = 1` (the default rate `1/n` there),
    /// where every rate gives the same distribution.
    pub fn standard_bit(n: usize, p: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension {
                n,
                reason: "mutation needs at least one position",
            });
        }
        if !(p > 0.0 && (p < 1.0 || (n == 1 && p == 1.0))) {
            return Err(Error::Config("mutation rate must lie in (0, 1)"));
        }
        let pmf = if n == 1 {
            alloc::vec![1.0]
        } else {
            let ln_q = libm::log1p(-p);
            let ln_odds = libm::log(p) - ln_q;
            let z = -libm::expm1(n as f64 * ln_q);
            let mut pmf = Vec::with_capacity(n);
            let mut ln_pk = n as f64 * ln_q;
            for k in 0..n {
                ln_pk += libm::log((n - k) as f64) - libm::log((k + 1) as f64) + ln_odds;
                pmf.push(libm::exp(ln_pk) / z);
            }
            pmf
        };
        let cdf = cumulative(&pmf);
        Ok(Self {
            kind: MutationKind::StandardBit { rate: Some(p) },
            n,
            rate: p,
            beta: 0.0,
            norm_const: 0.0,
            pmf,
            cdf,
        })
    }

    /// Fast mutation with exponent `beta` on `[1..⌊n/2⌋]`.
    pub fn fast(n: usize, beta: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension {
                n,
                reason: "fast mutation needs n >= 2",
            });
        }
        if !(beta > 1.0) {
            return Err(Error::Config("power-law exponent must exceed 1"));
        }
        let half_n = n / 2;
        let norm_const = fast_norm_const(half_n, beta);
        let pmf: Vec<f64> = (1..=half_n)
            .map(|l| libm::pow(l as f64, -beta) / norm_const)
            .collect();
        let cdf = cumulative(&pmf);
        Ok(Self {
            kind: MutationKind::Fast { beta },
            n,
            rate: 0.0,
            beta,
            norm_const,
            pmf,
            cdf,
        })
    }

    pub fn kind(&self) -> MutationKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Mutation rate (standard bit mutation only; 0 for fast mutation).
    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Power-law exponent (fast mutation only; 0 for standard bit mutation).
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Largest strength with positive probability.
    pub fn max_strength(&self) -> usize {
        self.pmf.len()
    }

    /// Normalisation constant `C_{n/2}^β` (fast mutation only).
    pub fn norm_const(&self) -> f64 {
        self.norm_const
    }

    /// `pmf()[ℓ - 1]` is the probability of strength `ℓ`.
    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    pub fn sample_strength<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        let idx = self.cdf.partition_point(|&c| c <= u);
        idx.min(self.cdf.len() - 1) + 1
    }

    /// Copies `parent` and flips `ℓ` distinct positions chosen uniformly at
    /// random, `ℓ` drawn from the strength distribution. Returns the offspring
    /// and `ℓ`.
    pub fn mutate_with<R: Rng + ?Sized>(
        &self,
        parent: &BitString,
        scratch: &mut FlipScratch,
        rng: &mut R,
    ) -> (BitString, usize) {
        debug_assert_eq!(parent.len(), self.n);
        let strength = self.sample_strength(rng);
        let mut child = parent.clone();
        for &pos in scratch.choose(self.n, strength, rng) {
            child.flip(pos as usize);
        }
        (child, strength)
    }

    pub fn mutate<R: Rng + ?Sized>(&self, parent: &BitString, rng: &mut R) -> (BitString, usize) {
        let mut scratch = FlipScratch::new(self.n);
        self.mutate_with(parent, &mut scratch, rng)
    }
}

/// Index permutation reused across mutations.
///
/// `choose` runs a partial Fisher–Yates shuffle over the permutation; since
/// the array stays a permutation of `0..n`, the first `ℓ` entries after the
/// shuffle are a uniformly random `ℓ`-subset whatever state it started from.
#[derive(Debug, Clone)]
pub struct FlipScratch {
    perm: Vec<u32>,
}

impl FlipScratch {
    pub fn new(n: usize) -> Self {
        Self {
            perm: (0..n as u32).collect(),
        }
    }

    pub fn choose<R: Rng + ?Sized>(&mut self, n: usize, count: usize, rng: &mut R) -> &[u32] {
        if self.perm.len() != n {
            *self = Self::new(n);
        }
        let count = count.min(n);
        for i in 0..count {
            let j = rng.gen_range(i..n);
            self.perm.swap(i, j);
        }
        &self.perm[..count]
    }
}

/// One draw from the zero-truncated binomial `Bin_{>0}(n, p)`.
pub fn sample_sbm_strength<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<usize> {
    Ok(MutationOperator::standard_bit(n, p)?.sample_strength(rng))
}

/// One draw from the power law `ℓ^-β / C` on `[1..⌊n/2⌋]`.
pub fn sample_fast_strength<R: Rng + ?Sized>(n: usize, beta: f64, rng: &mut R) -> Result<usize> {
    Ok(MutationOperator::fast(n, beta)?.sample_strength(rng))
}
