//! The (μ+λ) GA with configurable crossover probability.
//!
//! Each generation creates λ offspring. An offspring is a crossover child of
//! two parents drawn uniformly with replacement (probability `p_c`) or a
//! mutant of one uniformly drawn parent. Offspring identical to a parent
//! inherit its fitness without an evaluation. The best μ of parents and
//! offspring survive, ties broken uniformly at random.
//!
//! With the offspring-based scheme the crossover-or-mutation coin `r ∈ (0,1]`
//! is flipped for every offspring; with the population-based scheme it is
//! flipped once per generation. Crossover happens iff `r <= p_c`, so `p_c = 0`
//! never and `p_c = 1` always recombines.

use alloc::vec::Vec;

use rand::distributions::OpenClosed01;
use rand::Rng;

use crate::analytics::{Improvement, RunLog, Termination};
use crate::bitstring::BitString;
use crate::budget::{evaluate_counted, Budget, CountedProblem};
use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::variation::{crossover, CrossoverOperator, FlipScratch, MutationKind, MutationOperator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum VariatorScheme {
    #[default]
    OffspringBased,
    PopulationBased,
}

impl VariatorScheme {
    pub fn label(&self) -> &'static str {
        match self {
            VariatorScheme::OffspringBased => "offspring",
            VariatorScheme::PopulationBased => "population",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaConfig {
    pub mu: usize,
    pub lambda: usize,
    pub crossover_prob: f64,
    pub mutation: MutationKind,
    pub crossover: CrossoverOperator,
    pub scheme: VariatorScheme,
}

impl GaConfig {
    /// Standard bit mutation with `p = 1/n`, uniform crossover, offspring-based scheme.
    pub fn new(mu: usize, lambda: usize, crossover_prob: f64) -> Result<Self> {
        let cfg = Self {
            mu,
            lambda,
            crossover_prob,
            mutation: MutationKind::standard(),
            crossover: CrossoverOperator::Uniform,
            scheme: VariatorScheme::OffspringBased,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_mutation(mut self, mutation: MutationKind) -> Self {
        self.mutation = mutation;
        self
    }

    pub fn with_crossover(mut self, crossover: CrossoverOperator) -> Self {
        self.crossover = crossover;
        self
    }

    pub fn with_scheme(mut self, scheme: VariatorScheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.mu == 0 {
            return Err(Error::Config("mu must be at least 1"));
        }
        if self.lambda == 0 {
            return Err(Error::Config("lambda must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.crossover_prob) {
            return Err(Error::Config("crossover probability must lie in [0, 1]"));
        }
        if self.mu == 1 && self.crossover_prob > 0.0 {
            log::warn!("mu = 1 with p_c > 0: every crossover child is a clone of the single parent");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: BitString,
    pub fitness: f64,
    /// True if the fitness was measured, false if inherited from a parent.
    pub evaluated: bool,
}

/// Offspring bookkeeping of a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunCounters {
    pub generations: u64,
    pub crossover_offspring: u64,
    pub mutation_offspring: u64,
    pub inherited_offspring: u64,
    /// Generations in which every offspring was produced by crossover.
    pub crossover_generations: u64,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub log: RunLog,
    pub succeeded: bool,
    pub evals_used: u64,
    pub best_fitness: f64,
    /// Evaluations recorded by the problem counter; always equals `evals_used`.
    pub problem_evals: u64,
    pub counters: RunCounters,
    pub final_population: Vec<Individual>,
}

/// Optional knobs of a run.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Record the fitness of every evaluation in the log.
    pub trace: bool,
    /// Use these genomes instead of sampling the initial population.
    pub initial_population: Option<Vec<BitString>>,
    pub max_generations: Option<u64>,
}

/// Runs the GA until `target` is reached or the budget is spent.
pub fn run_ga<R: Rng + ?Sized>(
    cfg: &GaConfig,
    problem: &Problem,
    budget: Budget,
    target: f64,
    rng: &mut R,
) -> Result<RunResult> {
    run_ga_with(cfg, problem, budget, target, rng, &RunOptions::default())
}

struct Tracker {
    target: f64,
    best: f64,
    events: Vec<Improvement>,
    trace: Option<Vec<f64>>,
    hit: bool,
}

impl Tracker {
    fn record(&mut self, evals: u64, fitness: f64) {
        if let Some(t) = self.trace.as_mut() {
            t.push(fitness);
        }
        if self.events.is_empty() || fitness > self.best {
            self.best = fitness;
            self.events.push(Improvement { evals, best: fitness });
        }
        if fitness >= self.target {
            self.hit = true;
        }
    }
}

enum Step {
    Continue,
    Stop(Termination),
}

struct Run<'a, 'p, R: ?Sized> {
    cfg: &'a GaConfig,
    mutation: MutationOperator,
    scratch: FlipScratch,
    counted: CountedProblem<'p>,
    budget: Budget,
    tracker: Tracker,
    counters: RunCounters,
    rng: &'a mut R,
}

impl<R: Rng + ?Sized> Run<'_, '_, R> {
    /// Evaluates `genome`, or reports why the run has to stop.
    fn evaluate(&mut self, genome: &BitString) -> core::result::Result<f64, Termination> {
        match evaluate_counted(&mut self.counted, genome, &mut self.budget) {
            Ok(f) => {
                self.tracker.record(self.budget.used(), f);
                Ok(f)
            }
            Err(_) => Err(Termination::BudgetExhausted),
        }
    }

    fn stop_if_hit(&self) -> Step {
        if self.tracker.hit {
            Step::Stop(Termination::TargetHit)
        } else {
            Step::Continue
        }
    }

    fn wants_crossover(&mut self) -> bool {
        let r: f64 = self.rng.sample(OpenClosed01);
        r <= self.cfg.crossover_prob
    }

    fn make_offspring(
        &mut self,
        pop: &[Individual],
        use_crossover: bool,
    ) -> core::result::Result<Individual, Termination> {
        let mu = pop.len();
        let (genome, inherited) = if use_crossover {
            self.counters.crossover_offspring += 1;
            let x = &pop[self.rng.gen_range(0..mu)];
            let y = &pop[self.rng.gen_range(0..mu)];
            let z = crossover(&x.genome, &y.genome, self.cfg.crossover, self.rng)
                .expect("population genomes share one length");
            let inherited = if z == x.genome {
                Some(x.fitness)
            } else if z == y.genome {
                Some(y.fitness)
            } else {
                None
            };
            (z, inherited)
        } else {
            self.counters.mutation_offspring += 1;
            let x = &pop[self.rng.gen_range(0..mu)];
            let (z, _) = self.mutation.mutate_with(&x.genome, &mut self.scratch, self.rng);
            let inherited = (z == x.genome).then_some(x.fitness);
            (z, inherited)
        };
        match inherited {
            Some(fitness) => {
                self.counters.inherited_offspring += 1;
                Ok(Individual {
                    genome,
                    fitness,
                    evaluated: false,
                })
            }
            None => {
                let fitness = self.evaluate(&genome)?;
                Ok(Individual {
                    genome,
                    fitness,
                    evaluated: true,
                })
            }
        }
    }
}

fn all_identical(pop: &[Individual]) -> bool {
    pop.windows(2).all(|w| w[0].genome == w[1].genome)
}

/// [`run_ga`] with extra options.
pub fn run_ga_with<R: Rng + ?Sized>(
    cfg: &GaConfig,
    problem: &Problem,
    budget: Budget,
    target: f64,
    rng: &mut R,
    opts: &RunOptions,
) -> Result<RunResult> {
    cfg.validate()?;
    if budget.max_evals() < cfg.mu as u64 {
        return Err(Error::Config("budget must cover the initial population"));
    }
    let n = problem.dimension();
    if let Some(init) = &opts.initial_population {
        if init.len() != cfg.mu {
            return Err(Error::Config("initial population must hold exactly mu genomes"));
        }
        if let Some(bad) = init.iter().find(|g| g.len() != n) {
            return Err(Error::LengthMismatch {
                left: bad.len(),
                right: n,
            });
        }
    }
    let mut run = Run {
        cfg,
        mutation: MutationOperator::new(cfg.mutation, n)?,
        scratch: FlipScratch::new(n),
        counted: CountedProblem::new(problem),
        budget,
        tracker: Tracker {
            target,
            best: f64::NEG_INFINITY,
            events: Vec::new(),
            trace: opts.trace.then(Vec::new),
            hit: false,
        },
        counters: RunCounters::default(),
        rng,
    };

    let mut pop: Vec<Individual> = Vec::with_capacity(cfg.mu + cfg.lambda);
    let termination = 'run: {
        for i in 0..cfg.mu {
            let genome = match &opts.initial_population {
                Some(init) => init[i].clone(),
                None => BitString::random(n, run.rng)?,
            };
            let fitness = match run.evaluate(&genome) {
                Ok(f) => f,
                Err(t) => break 'run t,
            };
            pop.push(Individual {
                genome,
                fitness,
                evaluated: true,
            });
            if let Step::Stop(t) = run.stop_if_hit() {
                break 'run t;
            }
        }
        pop.sort_by(|a, b| b.fitness.total_cmp(&a.fitness));

        let mut offspring: Vec<Individual> = Vec::with_capacity(cfg.lambda);
        loop {
            if opts
                .max_generations
                .is_some_and(|g| run.counters.generations >= g)
            {
                break 'run Termination::GenerationLimit;
            }
            if cfg.crossover_prob >= 1.0 && all_identical(&pop) {
                break 'run Termination::Converged;
            }
            let generation_coin = match cfg.scheme {
                VariatorScheme::PopulationBased => Some(run.wants_crossover()),
                VariatorScheme::OffspringBased => None,
            };
            let before = run.counters.crossover_offspring;
            offspring.clear();
            for _ in 0..cfg.lambda {
                let use_crossover = match generation_coin {
                    Some(c) => c,
                    None => run.wants_crossover(),
                };
                match run.make_offspring(&pop, use_crossover) {
                    Ok(child) => offspring.push(child),
                    Err(t) => break 'run t,
                }
                if let Step::Stop(t) = run.stop_if_hit() {
                    break 'run t;
                }
            }
            if run.counters.crossover_offspring - before == cfg.lambda as u64 {
                run.counters.crossover_generations += 1;
            }
            run.counters.generations += 1;
            select_survivors(&mut pop, offspring.drain(..), cfg.mu, run.rng);
        }
    };

    let Run {
        counted,
        budget,
        tracker,
        counters,
        ..
    } = run;
    let log = RunLog {
        events: tracker.events,
        final_evals: budget.used(),
        budget: budget.max_evals(),
        hit_target: tracker.hit,
        termination,
        trace: tracker.trace,
    };
    Ok(RunResult {
        succeeded: tracker.hit,
        evals_used: budget.used(),
        best_fitness: tracker.best,
        problem_evals: counted.eval_count(),
        counters,
        final_population: pop,
        log,
    })
}

/// Keeps the best `mu` individuals of `pop ∪ offspring`, ties at the cut
/// broken uniformly at random. `pop` ends sorted by descending fitness.
pub fn select_survivors<R: Rng + ?Sized>(
    pop: &mut Vec<Individual>,
    offspring: impl IntoIterator<Item = Individual>,
    mu: usize,
    rng: &mut R,
) {
    if !pop.is_sorted_by(|a, b| a.fitness >= b.fitness) {
        pop.sort_by(|a, b| b.fitness.total_cmp(&a.fitness));
    }
    for child in offspring {
        let at = pop.partition_point(|x| x.fitness > child.fitness);
        pop.insert(at, child);
    }
    if pop.len() <= mu {
        return;
    }
    let cut = pop[mu - 1].fitness;
    let start = pop.partition_point(|x| x.fitness > cut);
    let end = pop.partition_point(|x| x.fitness >= cut);
    // move a uniformly random set of `end - mu` tied individuals behind the cut
    let tied = end - start;
    for i in 0..end - mu {
        let j = start + rng.gen_range(0..tied - i);
        pop.swap(j, end - 1 - i);
    }
    pop.truncate(mu);
}

/// One generation of offspring, coin flipped per offspring.
/// Every offspring is evaluated on `problem` (inherited when equal to a parent).
pub fn make_offspring_offspring_based<R: Rng + ?Sized>(
    pop: &[Individual],
    cfg: &GaConfig,
    problem: &Problem,
    rng: &mut R,
) -> Result<Vec<(Individual, bool)>> {
    offspring_generation(pop, cfg, problem, rng, VariatorScheme::OffspringBased)
}

/// One generation of offspring, a single coin for the whole generation.
pub fn make_offspring_population_based<R: Rng + ?Sized>(
    pop: &[Individual],
    cfg: &GaConfig,
    problem: &Problem,
    rng: &mut R,
) -> Result<Vec<(Individual, bool)>> {
    offspring_generation(pop, cfg, problem, rng, VariatorScheme::PopulationBased)
}

/// Returns each offspring with a flag telling whether crossover produced it.
fn offspring_generation<R: Rng + ?Sized>(
    pop: &[Individual],
    cfg: &GaConfig,
    problem: &Problem,
    rng: &mut R,
    scheme: VariatorScheme,
) -> Result<Vec<(Individual, bool)>> {
    cfg.validate()?;
    if pop.len() != cfg.mu {
        return Err(Error::Config("population must hold exactly mu individuals"));
    }
    let n = problem.dimension();
    let mut run = Run {
        cfg,
        mutation: MutationOperator::new(cfg.mutation, n)?,
        scratch: FlipScratch::new(n),
        counted: CountedProblem::new(problem),
        budget: Budget::new(u64::MAX)?,
        tracker: Tracker {
            target: f64::INFINITY,
            best: f64::NEG_INFINITY,
            events: Vec::new(),
            trace: None,
            hit: false,
        },
        counters: RunCounters::default(),
        rng,
    };
    let coin = match scheme {
        VariatorScheme::PopulationBased => Some(run.wants_crossover()),
        VariatorScheme::OffspringBased => None,
    };
    let mut out = Vec::with_capacity(cfg.lambda);
    for _ in 0..cfg.lambda {
        let c = match coin {
            Some(c) => c,
            None => run.wants_crossover(),
        };
        let child = run
            .make_offspring(pop, c)
            .map_err(|_| Error::BudgetExhausted { used: u64::MAX })?;
        out.push((child, c));
    }
    Ok(out)
}
