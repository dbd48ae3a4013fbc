//! Variation operators: standard bit mutation, fast (power-law) mutation and
//! one-point, two-point and uniform crossover.

mod crossover;
mod mutation;

pub use crossover::{crossover, one_point_at, two_point_at, CrossoverOperator};
pub use mutation::{
    fast_norm_const, sample_fast_strength, sample_sbm_strength, FlipScratch, MutationKind,
    MutationOperator, DEFAULT_FAST_BETA,
};
