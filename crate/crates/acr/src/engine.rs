//! A seeded, deterministic (1+1) elitist EA with Gaussian mutation.
//!
//! One generation proposes a single child `y = x + z`, `z_i ~ N(0, σ_i)`,
//! and keeps it only on strict improvement inside the domain. The σ
//! vector comes from the mutation strategy: a constant (landscape-
//! invariant) or derived from the current point (landscape-adaptive).
//!
//! Reproducibility: a run's root seed is expanded into one counter-based
//! substream per generation (see [`crate::rng`]); generation `t` consumes
//! exactly `dimension` uniform draws, one per coordinate, transformed by
//! the Gaussian inverse cdf. Identical `(config, seed)` pairs therefore
//! produce bit-identical trajectories, and batch results do not depend on
//! worker count or scheduling.

use crate::objectives::{evaluate, ObjectiveSpec};
use crate::rng::CounterRng;
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How the per-coordinate mutation strength σ is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum MutationStrategy {
    /// Fixed σ vector, the same at every point (landscape-invariant).
    InvariantSigma(Vec<f64>),
    /// σ_i = scale * ||x||_2 (landscape-adaptive).
    AdaptiveNorm(f64),
    /// σ_i = |x_i| (landscape-adaptive, coordinate-wise).
    AdaptiveCoordinate,
}

impl MutationStrategy {
    /// Validate strategy parameters against an objective dimension.
    pub fn validate(&self, dimension: usize) -> Result<()> {
        match self {
            MutationStrategy::InvariantSigma(sigma) => {
                if sigma.len() != dimension {
                    return Err(Error::DimensionMismatch {
                        expected: dimension,
                        got: sigma.len(),
                    });
                }
                if sigma.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
                    return Err(Error::invalid("invariant sigma components must be > 0"));
                }
            }
            MutationStrategy::AdaptiveNorm(scale) => {
                if !(*scale > 0.0) || !scale.is_finite() {
                    return Err(Error::invalid("adaptive-norm scale must be > 0"));
                }
            }
            MutationStrategy::AdaptiveCoordinate => {}
        }
        Ok(())
    }

    /// σ_i at the point `x`. Adaptive strategies may return 0 exactly at
    /// the optimizer; the mutation then degenerates to a zero step.
    pub fn sigma_at(&self, x: &[f64], i: usize) -> f64 {
        match self {
            MutationStrategy::InvariantSigma(sigma) => sigma[i],
            MutationStrategy::AdaptiveNorm(scale) => {
                scale * x.iter().map(|v| v * v).sum::<f64>().sqrt()
            }
            MutationStrategy::AdaptiveCoordinate => x[i].abs(),
        }
    }

    pub fn is_invariant(&self) -> bool {
        matches!(self, MutationStrategy::InvariantSigma(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            MutationStrategy::InvariantSigma(_) => "invariant",
            MutationStrategy::AdaptiveNorm(_) => "adaptive-norm",
            MutationStrategy::AdaptiveCoordinate => "adaptive-coordinate",
        }
    }
}

/// Configuration of one EA run.
#[derive(Debug, Clone, PartialEq)]
pub struct EaConfig {
    pub objective: ObjectiveSpec,
    pub strategy: MutationStrategy,
    pub x0: Vec<f64>,
    pub generations: usize,
    /// Fixed to 1 for the (1+1) algorithm; larger populations are a
    /// framework hook and are rejected by `run_ea`.
    pub population_size: usize,
}

impl EaConfig {
    pub fn new(
        objective: ObjectiveSpec,
        strategy: MutationStrategy,
        x0: Vec<f64>,
        generations: usize,
    ) -> Result<Self> {
        let config = EaConfig {
            objective,
            strategy,
            x0,
            generations,
            population_size: 1,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.x0.len() != self.objective.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.objective.dimension,
                got: self.x0.len(),
            });
        }
        if self.generations == 0 {
            return Err(Error::invalid("generations must be >= 1"));
        }
        if self.population_size != 1 {
            return Err(Error::invalid(
                "only the (1+1) case (population_size = 1) is implemented",
            ));
        }
        self.strategy.validate(self.objective.dimension)
    }
}

/// Per-generation best fitness of one seeded run; index 0 holds f(x0).
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrajectory {
    pub seed: u64,
    pub best_fitness: Vec<f64>,
}

/// Gaussian mutation: `x + z` with `z_i ~ N(0, sigma_i(x))`, one inverse-
/// cdf draw per coordinate. A zero σ yields a zero offset exactly.
pub fn mutate(x: &[f64], strategy: &MutationStrategy, rng: &mut CounterRng) -> Vec<f64> {
    let mut child = Vec::with_capacity(x.len());
    for (i, &xi) in x.iter().enumerate() {
        let z = rng.next_standard_normal();
        child.push(xi + strategy.sigma_at(x, i) * z);
    }
    child
}

/// Elitist selection: the child replaces the parent only when it lies in
/// the domain and strictly improves the fitness; ties keep the incumbent.
pub fn select_elitist(objective: &ObjectiveSpec, parent: &[f64], child: &[f64]) -> Result<Vec<f64>> {
    let f_parent = evaluate(objective, parent)?;
    if !objective.in_domain(child) {
        return Ok(parent.to_vec());
    }
    let f_child = evaluate(objective, child)?;
    Ok(if f_child < f_parent {
        child.to_vec()
    } else {
        parent.to_vec()
    })
}

/// Run the (1+1) elitist EA for `config.generations` generations.
pub fn run_ea(config: &EaConfig, seed: u64) -> Result<RunTrajectory> {
    config.validate()?;
    let objective = &config.objective;
    let mut x = config.x0.clone();
    let mut fx = evaluate(objective, &x)?;
    if !fx.is_finite() {
        return Err(Error::NonFiniteFitness { generation: 0 });
    }

    let mut best_fitness = Vec::with_capacity(config.generations + 1);
    best_fitness.push(fx);

    let root = CounterRng::from_seed(seed);
    for t in 1..=config.generations {
        let mut gen_rng = root.substream(t as u64);
        let child = mutate(&x, &config.strategy, &mut gen_rng);
        if objective.in_domain(&child) {
            let f_child = evaluate(objective, &child)?;
            if !f_child.is_finite() {
                return Err(Error::NonFiniteFitness { generation: t });
            }
            if f_child < fx {
                x = child;
                fx = f_child;
            }
        }
        best_fitness.push(fx);
    }
    Ok(RunTrajectory { seed, best_fitness })
}

fn check_distinct(seeds: &[u64]) -> Result<()> {
    let mut sorted = seeds.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != seeds.len() {
        return Err(Error::DuplicateSeeds);
    }
    Ok(())
}

/// Run one trajectory per seed, results in seed order.
///
/// With the `parallel` feature the runs fan out over rayon; each run owns
/// its seed-derived stream, so the output is identical to
/// [`run_batch_seq`] regardless of worker count.
#[cfg(feature = "parallel")]
pub fn run_batch(config: &EaConfig, seeds: &[u64]) -> Result<Vec<RunTrajectory>> {
    check_distinct(seeds)?;
    seeds.par_iter().map(|&s| run_ea(config, s)).collect()
}

/// Sequential fallback used when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn run_batch(config: &EaConfig, seeds: &[u64]) -> Result<Vec<RunTrajectory>> {
    run_batch_seq(config, seeds)
}

/// Sequential batch runner; always available (benchmarks compare it
/// against the parallel path).
pub fn run_batch_seq(config: &EaConfig, seeds: &[u64]) -> Result<Vec<RunTrajectory>> {
    check_distinct(seeds)?;
    seeds.iter().map(|&s| run_ea(config, s)).collect()
}
