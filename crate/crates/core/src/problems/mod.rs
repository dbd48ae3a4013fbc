//! The pseudo-Boolean problem suite.
//!
//! | id      | problem                                   |
//! |---------|-------------------------------------------|
//! | F1      | OneMax                                    |
//! | F2      | LeadingOnes                               |
//! | F3      | linear function `Σ i·x_i`                 |
//! | F4–F10  | W-model extensions of OneMax              |
//! | F11–F17 | W-model extensions of LeadingOnes         |
//! | F18     | LABS merit factor                         |
//! | F19–F21 | Ising ring, torus, triangular torus       |
//! | F22     | maximum independent vertex set            |
//! | F23     | N-queens                                  |
//! | F24     | concatenated trap                         |
//! | F25     | random NK landscape (negated, maximised)  |
//!
//! Layer parameters of F4–F17 are not fixed here; the companion crate reads
//! them from the problem catalog and calls [`Problem::wmodel`].

pub mod base;
pub mod combinatorial;
pub mod ising;
pub mod labs;
pub mod nk;
pub mod suite_rng;
pub mod trap;
pub mod wmodel;

use alloc::string::{String, ToString};

use crate::bitstring::BitString;
use crate::error::{Error, Result};

pub use base::{leading_ones, linear_harmonic, onemax};
pub use combinatorial::{mivs, nqueens};
pub use ising::{ising_ring, ising_torus, ising_triangular};
pub use labs::labs;
pub use nk::{nk_eval, NkLandscape};
pub use trap::{concatenated_trap, TrapParams};
pub use wmodel::{apply_wmodel, Ruggedness, WBase, WModel, WModelLayers};

#[derive(Debug, Clone)]
pub enum Landscape {
    OneMax,
    LeadingOnes,
    Linear,
    WModel(WModel),
    Labs,
    IsingRing,
    IsingTorus,
    IsingTriangular,
    Mivs,
    NQueens,
    Trap(TrapParams),
    /// Maximises `-nk_eval`, i.e. minimises the landscape average.
    NegatedNk(NkLandscape),
}

/// A pseudo-Boolean objective on `{0,1}^n`, to be maximised.
///
/// Instances are immutable; evaluation counting is done per run by
/// [`CountedProblem`](crate::budget::CountedProblem).
#[derive(Debug, Clone)]
pub struct Problem {
    id: u32,
    name: String,
    n: usize,
    landscape: Landscape,
    optimum: Option<f64>,
}

impl Problem {
    fn build(id: u32, name: &str, n: usize, landscape: Landscape, optimum: Option<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension {
                n,
                reason: "problems need at least one variable",
            });
        }
        Ok(Self {
            id,
            name: name.to_string(),
            n,
            landscape,
            optimum,
        })
    }

    pub fn one_max(n: usize) -> Result<Self> {
        Self::build(1, "OneMax", n, Landscape::OneMax, Some(n as f64))
    }

    pub fn leading_ones(n: usize) -> Result<Self> {
        Self::build(2, "LeadingOnes", n, Landscape::LeadingOnes, Some(n as f64))
    }

    pub fn linear(n: usize) -> Result<Self> {
        Self::build(3, "Linear", n, Landscape::Linear, Some((n * (n + 1) / 2) as f64))
    }

    pub fn wmodel(id: u32, name: &str, n: usize, base: WBase, layers: WModelLayers) -> Result<Self> {
        let wm = WModel::new(n, base, layers)?;
        let opt = wm.optimum();
        Self::build(id, name, n, Landscape::WModel(wm), Some(opt))
    }

    pub fn labs(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension {
                n,
                reason: "LABS needs n >= 2",
            });
        }
        Self::build(18, "LABS", n, Landscape::Labs, None)
    }

    pub fn ising_ring(n: usize) -> Result<Self> {
        Self::build(19, "IsingRing", n, Landscape::IsingRing, Some(n as f64))
    }

    pub fn ising_torus(n: usize) -> Result<Self> {
        ising::square_side(n)?;
        Self::build(20, "IsingTorus", n, Landscape::IsingTorus, Some(2.0 * n as f64))
    }

    pub fn ising_triangular(n: usize) -> Result<Self> {
        ising::square_side(n)?;
        Self::build(21, "IsingTriangular", n, Landscape::IsingTriangular, Some(3.0 * n as f64))
    }

    pub fn mivs(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension {
                n,
                reason: "independent set graph needs n >= 2",
            });
        }
        Self::build(22, "MIVS", n, Landscape::Mivs, None)
    }

    pub fn nqueens(n: usize) -> Result<Self> {
        let side = ising::square_side(n)?;
        let opt = combinatorial::nqueens_optimum(side) as f64;
        Self::build(23, "NQueens", n, Landscape::NQueens, Some(opt))
    }

    pub fn concatenated_trap(n: usize, k: usize) -> Result<Self> {
        let params = TrapParams::new(n, k)?;
        Self::build(24, "ConcatenatedTrap", n, Landscape::Trap(params), Some(params.m as f64))
    }

    pub fn nk_landscape(n: usize, k: usize, seed: u64) -> Result<Self> {
        let inst = NkLandscape::new(n, k, seed)?;
        Self::build(25, "NKLandscape", n, Landscape::NegatedNk(inst), None)
    }

    /// Overrides the suite id (used for W-model variants and custom problems).
    pub fn with_id(mut self, id: u32) -> Self {
        self.id = id;
        self
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Known optimal value, if any.
    pub fn optimum(&self) -> Option<f64> {
        self.optimum
    }

    pub fn landscape(&self) -> &Landscape {
        &self.landscape
    }

    /// Fitness of `x`; deterministic and total on `{0,1}^n`.
    pub fn evaluate(&self, x: &BitString) -> f64 {
        debug_assert_eq!(x.len(), self.n, "genome length does not match problem dimension");
        match &self.landscape {
            Landscape::OneMax => onemax(x) as f64,
            Landscape::LeadingOnes => leading_ones(x) as f64,
            Landscape::Linear => linear_harmonic(x) as f64,
            Landscape::WModel(wm) => wm.evaluate(x),
            // construction guarantees n >= 2, hence E >= 1
            Landscape::Labs => labs(x).unwrap_or(0.0),
            Landscape::IsingRing => ising_ring(x) as f64,
            Landscape::IsingTorus => ising_torus(x).map_or(0.0, |v| v as f64),
            Landscape::IsingTriangular => ising_triangular(x).map_or(0.0, |v| v as f64),
            Landscape::Mivs => mivs(x) as f64,
            Landscape::NQueens => nqueens(x).map_or(0.0, |v| v as f64),
            Landscape::Trap(p) => concatenated_trap(x, *p).unwrap_or(0.0),
            Landscape::NegatedNk(inst) => -nk_eval(x, inst),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_constraints() {
        assert!(Problem::ising_torus(99).is_err());
        assert!(Problem::ising_triangular(50).is_err());
        assert!(Problem::nqueens(15).is_err());
        assert!(Problem::concatenated_trap(12, 5).is_err());
        assert!(Problem::labs(1).is_err());
        assert!(Problem::one_max(0).is_err());
    }

    #[test]
    fn optima_at_all_ones() {
        let ones = BitString::ones(100).unwrap();
        for p in [
            Problem::one_max(100).unwrap(),
            Problem::leading_ones(100).unwrap(),
            Problem::linear(100).unwrap(),
            Problem::ising_ring(100).unwrap(),
            Problem::ising_torus(100).unwrap(),
            Problem::ising_triangular(100).unwrap(),
            Problem::concatenated_trap(100, 5).unwrap(),
        ] {
            assert_eq!(p.evaluate(&ones), p.optimum().unwrap(), "{}", p.name());
        }
    }

    #[test]
    fn negated_nk_is_negative() {
        let p = Problem::nk_landscape(20, 1, 1).unwrap();
        let v = p.evaluate(&BitString::zeros(20).unwrap());
        assert!(v < 0.0 && v > -1.0);
    }
}
