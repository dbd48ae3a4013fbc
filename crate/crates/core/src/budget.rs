use crate::bitstring::BitString;
use crate::error::{Error, Result};
use crate::problems::Problem;

/// Evaluation budget of a single run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    max_evals: u64,
    used: u64,
}

impl Budget {
    pub fn new(max_evals: u64) -> Result<Self> {
        if max_evals == 0 {
            return Err(Error::Config("budget must allow at least one evaluation"));
        }
        Ok(Self { max_evals, used: 0 })
    }

    /// `multiplier * n^2` evaluations.
    pub fn quadratic(multiplier: u64, n: usize) -> Result<Self> {
        Self::new(multiplier.saturating_mul((n as u64).saturating_mul(n as u64)))
    }

    #[inline]
    pub fn max_evals(&self) -> u64 {
        self.max_evals
    }

    #[inline]
    pub fn used(&self) -> u64 {
        self.used
    }

    #[inline]
    pub fn remaining(&self) -> u64 {
        self.max_evals - self.used
    }

    #[inline]
    pub fn is_exhausted(&self) -> bool {
        self.used >= self.max_evals
    }

    fn charge(&mut self) -> Result<()> {
        if self.is_exhausted() {
            return Err(Error::BudgetExhausted { used: self.used });
        }
        self.used += 1;
        Ok(())
    }
}

/// Per-run view of a shared [`Problem`] that counts true evaluations.
///
/// The problem itself is immutable and may be shared between concurrent runs;
/// the counter belongs to one run only.
#[derive(Debug, Clone)]
pub struct CountedProblem<'p> {
    problem: &'p Problem,
    eval_count: u64,
}

impl<'p> CountedProblem<'p> {
    pub fn new(problem: &'p Problem) -> Self {
        Self {
            problem,
            eval_count: 0,
        }
    }

    #[inline]
    pub fn problem(&self) -> &'p Problem {
        self.problem
    }

    #[inline]
    pub fn eval_count(&self) -> u64 {
        self.eval_count
    }
}

/// Evaluates `x`, charging one evaluation to both the problem counter and the
/// budget. Nothing is cached: repeated calls on the same genome cost again.
pub fn evaluate_counted(
    problem: &mut CountedProblem<'_>,
    x: &BitString,
    budget: &mut Budget,
) -> Result<f64> {
    budget.charge()?;
    problem.eval_count += 1;
    Ok(problem.problem.evaluate(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_every_call() {
        let p = Problem::one_max(4).unwrap();
        let mut counted = CountedProblem::new(&p);
        let mut budget = Budget::new(10).unwrap();
        let x = BitString::parse("1111").unwrap();
        assert_eq!(evaluate_counted(&mut counted, &x, &mut budget).unwrap(), 4.0);
        assert_eq!(counted.eval_count(), 1);
        assert_eq!(evaluate_counted(&mut counted, &x, &mut budget).unwrap(), 4.0);
        assert_eq!(counted.eval_count(), 2);
        assert_eq!(budget.used(), 2);
    }

    #[test]
    fn exhausted_budget_refuses() {
        let p = Problem::one_max(4).unwrap();
        let mut counted = CountedProblem::new(&p);
        let mut budget = Budget::new(1).unwrap();
        let x = BitString::zeros(4).unwrap();
        evaluate_counted(&mut counted, &x, &mut budget).unwrap();
        assert_eq!(
            evaluate_counted(&mut counted, &x, &mut budget),
            Err(Error::BudgetExhausted { used: 1 })
        );
        assert_eq!(counted.eval_count(), 1);
        assert_eq!(budget.used(), 1);
    }

    #[test]
    fn quadratic_budget() {
        assert_eq!(Budget::quadratic(100, 16).unwrap().max_evals(), 25_600);
        assert_eq!(Budget::quadratic(5, 100).unwrap().max_evals(), 50_000);
        assert!(Budget::new(0).is_err());
    }
}
