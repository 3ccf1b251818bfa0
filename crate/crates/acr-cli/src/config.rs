//! Experiment configuration: a flat TOML document with explicit keys.
//!
//! ```toml
//! objective = "sphere2d"          # sphere2d | rastrigin2d | rastrigin1d
//! x0 = [10.0, 10.0]
//! generations = 500
//! runs = 100
//! seed = 1
//! checkpoints = [1, 101, 201, 301, 401]
//! out = "results"
//!
//! [strategy]
//! kind = "adaptive-norm"          # invariant | adaptive-norm | adaptive-coordinate
//! scale = 1.0                     # adaptive-norm only
//! # sigma = [1.0, 1.0]            # invariant only; a scalar broadcasts
//! ```
//!
//! Unknown keys are rejected; every diagnostic names the offending key.

use crate::CliError;
use acr::engine::{EaConfig, MutationStrategy};
use acr::objectives::ObjectiveSpec;
use serde::Deserialize;
use std::path::PathBuf;

pub const DEFAULT_GENERATIONS: usize = 500;
pub const DEFAULT_RUNS: usize = 100;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_CHECKPOINTS: [usize; 5] = [1, 101, 201, 301, 401];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    objective: String,
    strategy: RawStrategy,
    x0: Option<Vec<f64>>,
    generations: Option<usize>,
    runs: Option<usize>,
    seed: Option<u64>,
    checkpoints: Option<Vec<usize>>,
    out: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStrategy {
    kind: String,
    sigma: Option<SigmaSpec>,
    scale: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SigmaSpec {
    Scalar(f64),
    Vector(Vec<f64>),
}

/// A validated experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub ea: EaConfig,
    pub objective_name: String,
    pub strategy_name: String,
    pub runs: usize,
    pub seed: u64,
    pub checkpoints: Vec<usize>,
    pub out: PathBuf,
}

/// Parse and validate a config document.
pub fn load_config(document: &str) -> Result<ExperimentConfig, CliError> {
    let raw: RawConfig =
        toml::from_str(document).map_err(|e| CliError::Config(e.message().to_string()))?;

    let objective = ObjectiveSpec::by_name(&raw.objective).ok_or_else(|| {
        CliError::Config(format!(
            "objective: unknown id {:?} (expected sphere2d, rastrigin2d or rastrigin1d)",
            raw.objective
        ))
    })?;

    let strategy = build_strategy(&raw.strategy, objective.dimension)?;

    let x0 = raw.x0.unwrap_or_else(|| vec![10.0; objective.dimension]);
    if x0.len() != objective.dimension {
        return Err(CliError::Config(format!(
            "x0: expected {} coordinates, got {}",
            objective.dimension,
            x0.len()
        )));
    }
    if x0.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Config("x0: coordinates must be finite".into()));
    }

    let generations = raw.generations.unwrap_or(DEFAULT_GENERATIONS);
    if generations == 0 {
        return Err(CliError::Config("generations: must be >= 1".into()));
    }
    let runs = raw.runs.unwrap_or(DEFAULT_RUNS);
    if runs == 0 {
        return Err(CliError::Config("runs: must be >= 1".into()));
    }

    let checkpoints = match raw.checkpoints {
        Some(cs) => {
            if cs.is_empty() {
                return Err(CliError::Config("checkpoints: must be non-empty".into()));
            }
            for &t in &cs {
                if t == 0 || t > generations {
                    return Err(CliError::Config(format!(
                        "checkpoints: value {t} out of range [1, {generations}] (the rate is defined for t >= 1)"
                    )));
                }
            }
            if cs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(CliError::Config(
                    "checkpoints: must be strictly increasing".into(),
                ));
            }
            cs
        }
        None => DEFAULT_CHECKPOINTS
            .iter()
            .copied()
            .filter(|&t| t <= generations)
            .collect(),
    };

    let strategy_name = strategy.name().to_string();
    let ea = EaConfig::new(objective, strategy, x0, generations)
        .map_err(|e| CliError::Config(e.to_string()))?;

    Ok(ExperimentConfig {
        ea,
        objective_name: raw.objective,
        strategy_name,
        runs,
        seed: raw.seed.unwrap_or(DEFAULT_SEED),
        checkpoints,
        out: raw.out.unwrap_or_else(|| PathBuf::from("results")),
    })
}

fn build_strategy(raw: &RawStrategy, dimension: usize) -> Result<MutationStrategy, CliError> {
    let strategy = match raw.kind.as_str() {
        "invariant" => {
            let sigma = match &raw.sigma {
                Some(SigmaSpec::Scalar(s)) => vec![*s; dimension],
                Some(SigmaSpec::Vector(v)) => v.clone(),
                None => vec![1.0; dimension],
            };
            if raw.scale.is_some() {
                return Err(CliError::Config(
                    "strategy.scale: only valid for kind = \"adaptive-norm\"".into(),
                ));
            }
            MutationStrategy::InvariantSigma(sigma)
        }
        "adaptive-norm" => {
            if raw.sigma.is_some() {
                return Err(CliError::Config(
                    "strategy.sigma: only valid for kind = \"invariant\"".into(),
                ));
            }
            MutationStrategy::AdaptiveNorm(raw.scale.unwrap_or(1.0))
        }
        "adaptive-coordinate" => {
            if raw.sigma.is_some() || raw.scale.is_some() {
                return Err(CliError::Config(
                    "strategy: adaptive-coordinate takes no parameters".into(),
                ));
            }
            MutationStrategy::AdaptiveCoordinate
        }
        other => {
            return Err(CliError::Config(format!(
                "strategy.kind: unknown kind {other:?} (expected invariant, adaptive-norm or adaptive-coordinate)"
            )))
        }
    };
    strategy
        .validate(dimension)
        .map_err(|e| CliError::Config(format!("strategy.sigma: {e}")))?;
    Ok(strategy)
}
