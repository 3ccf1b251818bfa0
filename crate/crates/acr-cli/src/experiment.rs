//! Batch execution and CSV emission for one experiment config.

use crate::config::ExperimentConfig;
use crate::report::{render_checkpoint_csv, render_series_csv, series_rows};
use crate::CliError;
use acr::engine::run_batch;
use acr::metrics::{acr_series, error_series};
use acr::rng::derive_seed;
use std::fs;
use std::path::PathBuf;

/// In-memory result of an experiment: both CSV documents.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub series_csv: String,
    pub checkpoints_csv: String,
}

/// Run the batch and render both CSV documents deterministically.
///
/// Per-run seeds derive from the root seed by index, so identical
/// `(config, seed)` pairs give byte-identical documents regardless of
/// worker count.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput, CliError> {
    let seeds: Vec<u64> = (0..config.runs)
        .map(|i| derive_seed(config.seed, i as u64))
        .collect();
    let batch = run_batch(&config.ea, &seeds)?;
    let errors = error_series(&batch, config.ea.objective.f_star)?;
    let acr = acr_series(&errors)?;

    let rows = series_rows(&errors, &acr);
    Ok(ExperimentOutput {
        series_csv: render_series_csv(&rows),
        checkpoints_csv: render_checkpoint_csv(
            &config.objective_name,
            &config.strategy_name,
            &config.checkpoints,
            &acr,
        ),
    })
}

/// Run and write `series.csv` and `checkpoints.csv` under the output
/// directory; returns the written paths.
pub fn run_and_write(config: &ExperimentConfig) -> Result<(PathBuf, PathBuf), CliError> {
    let output = run_experiment(config)?;
    fs::create_dir_all(&config.out)
        .map_err(|e| CliError::io(&format!("creating {}", config.out.display()), e))?;
    let series_path = config.out.join("series.csv");
    let checkpoints_path = config.out.join("checkpoints.csv");
    fs::write(&series_path, &output.series_csv)
        .map_err(|e| CliError::io(&format!("writing {}", series_path.display()), e))?;
    fs::write(&checkpoints_path, &output.checkpoints_csv)
        .map_err(|e| CliError::io(&format!("writing {}", checkpoints_path.display()), e))?;
    Ok((series_path, checkpoints_path))
}
