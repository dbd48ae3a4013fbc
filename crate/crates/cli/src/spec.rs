//! Declarative experiment specifications.
//!
//! ```toml
//! name = "lo-sweep"
//! runs = 30
//! budget_multiplier = 5        # budget = c * n^2 evaluations
//! master_seed = 2020
//! target = "optimum"           # "optimum" | "reference" | "none" | number
//!
//! [[problems]]
//! id = 2
//! dims = [64, 100]
//!
//! [grid]
//! mu = [2, 10]
//! lambda = [1, "half", "mu"]   # absolute sizes or rules relative to mu
//! pc = [0.0, 0.5]
//! mutation = ["sbm"]           # sbm | fast
//! crossover = ["uniform"]      # uniform | one-point | two-point
//! scheme = ["offspring"]       # offspring | population
//! ```

use std::path::Path;

use pcbench_core::{CrossoverOperator, MutationKind, VariatorScheme};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{BenchError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub name: String,
    pub runs: usize,
    pub budget_multiplier: u64,
    pub master_seed: u64,
    #[serde(default)]
    pub target: TargetSpec,
    pub problems: Vec<ProblemSpec>,
    pub grid: GridSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub id: u32,
    pub dims: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub mu: Vec<usize>,
    pub lambda: Vec<LambdaSpec>,
    pub pc: Vec<f64>,
    #[serde(default = "default_mutation")]
    pub mutation: Vec<String>,
    #[serde(default = "default_crossover")]
    pub crossover: Vec<String>,
    #[serde(default = "default_scheme")]
    pub scheme: Vec<String>,
}

fn default_mutation() -> Vec<String> {
    vec!["sbm".into()]
}

fn default_crossover() -> Vec<String> {
    vec!["uniform".into()]
}

fn default_scheme() -> Vec<String> {
    vec!["offspring".into()]
}

/// Offspring population size, absolute or relative to `mu`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LambdaSpec {
    Fixed(usize),
    /// `"half"` is `ceil(mu / 2)`, `"mu"` is `mu`.
    Rule(String),
}

impl LambdaSpec {
    pub fn resolve(&self, mu: usize) -> Result<usize> {
        match self {
            LambdaSpec::Fixed(l) => Ok(*l),
            LambdaSpec::Rule(r) => match r.as_str() {
                "half" => Ok(mu.div_ceil(2)),
                "mu" => Ok(mu),
                other => Err(BenchError::Usage(format!("unknown lambda rule {other:?}"))),
            },
        }
    }

    pub fn label(&self) -> String {
        match self {
            LambdaSpec::Fixed(l) => l.to_string(),
            LambdaSpec::Rule(r) => r.clone(),
        }
    }
}

/// Fitness value at which a run stops.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetSpec {
    Value(f64),
    /// `"optimum"`: the known optimum, or no target when it is unknown.
    /// `"reference"`: the catalog target at `n = 100`, the optimum elsewhere.
    /// `"none"`: spend the whole budget.
    Named(String),
}

impl Default for TargetSpec {
    fn default() -> Self {
        TargetSpec::Named("optimum".into())
    }
}

pub fn parse_mutation(s: &str) -> Result<MutationKind> {
    match s {
        "sbm" => Ok(MutationKind::standard()),
        "fast" => Ok(MutationKind::fast()),
        other => Err(BenchError::Usage(format!("unknown mutation {other:?}"))),
    }
}

pub fn parse_crossover(s: &str) -> Result<CrossoverOperator> {
    CrossoverOperator::ALL
        .into_iter()
        .find(|c| c.label() == s)
        .ok_or_else(|| BenchError::Usage(format!("unknown crossover {s:?}")))
}

pub fn parse_scheme(s: &str) -> Result<VariatorScheme> {
    match s {
        "offspring" => Ok(VariatorScheme::OffspringBased),
        "population" => Ok(VariatorScheme::PopulationBased),
        other => Err(BenchError::Usage(format!("unknown scheme {other:?}"))),
    }
}

impl ExperimentSpec {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(BenchError::io(path))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let spec: ExperimentSpec = toml::from_str(text).map_err(|e| BenchError::Parse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let usage = |m: &str| Err(BenchError::Usage(format!("spec {:?}: {m}", self.name)));
        if self.runs == 0 {
            return usage("runs must be at least 1");
        }
        if self.budget_multiplier == 0 {
            return usage("budget_multiplier must be at least 1");
        }
        if self.problems.is_empty() || self.problems.iter().any(|p| p.dims.is_empty()) {
            return usage("every problem needs at least one dimension");
        }
        let g = &self.grid;
        if g.mu.is_empty() || g.lambda.is_empty() || g.pc.is_empty() {
            return usage("mu, lambda and pc need at least one value");
        }
        if g.mutation.is_empty() || g.crossover.is_empty() || g.scheme.is_empty() {
            return usage("mutation, crossover and scheme need at least one value");
        }
        for l in &g.lambda {
            l.resolve(1)?;
        }
        for m in &g.mutation {
            parse_mutation(m)?;
        }
        for c in &g.crossover {
            parse_crossover(c)?;
        }
        for s in &g.scheme {
            parse_scheme(s)?;
        }
        if let TargetSpec::Named(t) = &self.target {
            if !matches!(t.as_str(), "optimum" | "reference" | "none") {
                return usage("target must be a number, \"optimum\", \"reference\" or \"none\"");
            }
        }
        Ok(())
    }

    /// Canonical text form; formatting differences of the source file vanish.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("specs serialise")
    }

    /// Hex SHA-256 of the canonical form.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
