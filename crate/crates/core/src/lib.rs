//! Core of `pcbench`: a family of (μ+λ) genetic algorithms in which every
//! offspring is produced either by crossover (with probability `p_c`) or by
//! mutation, together with a 25-problem pseudo-Boolean suite and the
//! analytics used to compare configurations (ERT, fixed-target curves,
//! target selection, optimal crossover probability).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the problem
//! catalog, grid execution and the command line live in the `pcbench`
//! companion crate.
//!
//! ```
//! use pcbench_core::prelude::*;
//!
//! let problem = Problem::one_max(16).unwrap();
//! let cfg = GaConfig::new(1, 1, 0.0).unwrap();
//! let mut rng = RngStream::from_seed(7);
//! let result = run_ga(&cfg, &problem, Budget::new(25_600).unwrap(), 16.0, &mut rng).unwrap();
//! assert!(result.succeeded);
//! ```
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytics;
pub mod bitstring;
pub mod budget;
pub mod engine;
pub mod error;
pub mod problems;
pub mod rng;
pub mod variation;

pub use analytics::{RunLog, Termination};
pub use bitstring::BitString;
pub use budget::{evaluate_counted, Budget, CountedProblem};
pub use engine::{run_ga, GaConfig, Individual, RunResult, VariatorScheme};
pub use error::Error;
pub use problems::Problem;
pub use rng::RngStream;
pub use variation::{CrossoverOperator, MutationKind, MutationOperator};

pub mod prelude {
    pub use crate::analytics::{compute_ert, fixed_target_curve, RunLog};
    pub use crate::bitstring::BitString;
    pub use crate::budget::{evaluate_counted, Budget, CountedProblem};
    pub use crate::engine::{run_ga, GaConfig, RunResult, VariatorScheme};
    pub use crate::problems::Problem;
    pub use crate::rng::RngStream;
    pub use crate::variation::{CrossoverOperator, MutationKind, MutationOperator};
}
