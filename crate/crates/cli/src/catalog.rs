//! The problem catalog: suite ids, dimension rules, layer parameters and the
//! reference targets at `n = 100`.

use std::collections::BTreeSet;
use std::path::Path;

use pcbench_core::problems::{Ruggedness, WBase, WModelLayers};
use pcbench_core::Problem;
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};

const BUILTIN: &str = include_str!("../catalog/problems.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Onemax,
    Leadingones,
    Linear,
    Wmodel,
    Labs,
    IsingRing,
    IsingTorus,
    IsingTriangular,
    Mivs,
    Nqueens,
    Trap,
    Nk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimensionRule {
    Any,
    Square,
    MultipleOfK,
    #[serde(rename = "at-least-2")]
    AtLeast2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseName {
    Onemax,
    Leadingones,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuggednessName {
    Plateau,
    Parity,
    BlockReversal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub id: u32,
    pub name: String,
    pub kind: Kind,
    pub dimension: DimensionRule,
    pub base: Option<BaseName>,
    pub dummy: Option<f64>,
    pub dummy_seed: Option<u64>,
    pub neutrality: Option<usize>,
    pub epistasis: Option<usize>,
    pub ruggedness: Option<RuggednessName>,
    pub trap_k: Option<usize>,
    pub nk_k: Option<usize>,
    pub instance_seed: Option<u64>,
    pub nk_index: Option<String>,
    pub target_n100: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    pub version: String,
    pub mirrors: String,
    pub problem: Vec<Entry>,
}

impl Catalog {
    /// The catalog shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN, Path::new("<builtin catalog>")).expect("builtin catalog is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(BenchError::io(path))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let bad = |message: String| BenchError::Parse {
            path: origin.to_path_buf(),
            message,
        };
        let cat: Catalog = toml::from_str(text).map_err(|e| bad(e.to_string()))?;
        let mut seen = BTreeSet::new();
        for e in &cat.problem {
            if !seen.insert(e.id) {
                return Err(bad(format!("duplicate problem id {}", e.id)));
            }
            e.check().map_err(|m| bad(format!("problem {}: {m}", e.id)))?;
        }
        Ok(cat)
    }

    pub fn entry(&self, id: u32) -> Option<&Entry> {
        self.problem.iter().find(|e| e.id == id)
    }

    pub fn ids(&self) -> impl Iterator<Item = u32> + '_ {
        self.problem.iter().map(|e| e.id)
    }

    /// Builds problem `id` in dimension `n`.
    pub fn build(&self, id: u32, n: usize) -> Result<Problem> {
        let entry = self
            .entry(id)
            .ok_or_else(|| BenchError::Usage(format!("problem {id} is not in the catalog")))?;
        entry.build(n)
    }
}

impl Entry {
    fn check(&self) -> std::result::Result<(), String> {
        match self.kind {
            Kind::Wmodel => {
                if self.base.is_none() {
                    return Err("wmodel records need a base".into());
                }
                if let Some(r) = self.dummy {
                    if !(r > 0.0 && r <= 1.0) {
                        return Err("dummy ratio must lie in (0, 1]".into());
                    }
                    if self.dummy_seed.is_none() {
                        return Err("dummy layer needs dummy_seed".into());
                    }
                }
            }
            Kind::Trap if self.trap_k.is_none() => return Err("trap records need trap_k".into()),
            Kind::Nk => {
                if self.nk_k.is_none() || self.instance_seed.is_none() {
                    return Err("nk records need nk_k and instance_seed".into());
                }
                if self.nk_index.as_deref().unwrap_or("self-lowest") != "self-lowest" {
                    return Err("only the self-lowest NK index order is supported".into());
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn layers(&self, n: usize) -> WModelLayers {
        WModelLayers {
            dummy_m: self.dummy.map(|r| (r * n as f64).floor() as usize),
            dummy_seed: self.dummy_seed.unwrap_or(0),
            neutrality_mu: self.neutrality,
            epistasis_nu: self.epistasis,
            ruggedness: self.ruggedness.map(|r| match r {
                RuggednessName::Plateau => Ruggedness::Plateau,
                RuggednessName::Parity => Ruggedness::Parity,
                RuggednessName::BlockReversal => Ruggedness::BlockReversal,
            }),
        }
    }

    pub fn build(&self, n: usize) -> Result<Problem> {
        let p = match self.kind {
            Kind::Onemax => Problem::one_max(n)?,
            Kind::Leadingones => Problem::leading_ones(n)?,
            Kind::Linear => Problem::linear(n)?,
            Kind::Wmodel => {
                let base = match self.base.expect("checked at load") {
                    BaseName::Onemax => WBase::OneMax,
                    BaseName::Leadingones => WBase::LeadingOnes,
                };
                Problem::wmodel(self.id, &self.name, n, base, self.layers(n))?
            }
            Kind::Labs => Problem::labs(n)?,
            Kind::IsingRing => Problem::ising_ring(n)?,
            Kind::IsingTorus => Problem::ising_torus(n)?,
            Kind::IsingTriangular => Problem::ising_triangular(n)?,
            Kind::Mivs => Problem::mivs(n)?,
            Kind::Nqueens => Problem::nqueens(n)?,
            Kind::Trap => Problem::concatenated_trap(n, self.trap_k.expect("checked at load"))?,
            Kind::Nk => Problem::nk_landscape(
                n,
                self.nk_k.expect("checked at load"),
                self.instance_seed.expect("checked at load"),
            )?,
        };
        Ok(p.with_id(self.id).with_name(&self.name))
    }
}
