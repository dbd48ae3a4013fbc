use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {n}: {reason}")]
    InvalidDimension { n: usize, reason: &'static str },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("budget exhausted after {used} evaluations")]
    BudgetExhausted { used: u64 },
    #[error("invalid configuration: {0}")]
    Config(&'static str),
    #[error("degenerate LABS sequence: all aperiodic autocorrelations vanish")]
    DegenerateLabs,
    #[error("no runs to aggregate")]
    EmptyLogs,
    #[error("no probed crossover probability has a finite ERT")]
    NoFiniteErt,
}

pub type Result<T> = core::result::Result<T, Error>;
