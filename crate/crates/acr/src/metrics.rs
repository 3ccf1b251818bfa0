//! Error series and the geometric average convergence rate.
//!
//! The pipeline aggregates first and differences second: the fitness
//! sample mean over runs is taken per generation, then the error
//! `e_t = |mean_t − f*|`, then the rate `R_t = 1 − (e_t/e_0)^{1/t}`.
//! An exact zero error (`e_k <= 1e-300`, the underflow guard — not a
//! loose epsilon) pins `R_t = 1` for every `t >= k`.

use crate::engine::RunTrajectory;
use crate::{Error, Result};

/// Errors at or below this magnitude count as exact zeros.
pub const ZERO_TOL: f64 = 1e-300;

/// Aggregated error series `e_t` over `runs` trajectories.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSeries {
    e: Vec<f64>,
    runs: usize,
}

impl ErrorSeries {
    /// Build directly from error values (each must be >= 0 and finite).
    pub fn from_values(e: Vec<f64>, runs: usize) -> Result<Self> {
        if e.is_empty() {
            return Err(Error::invalid("error series must be non-empty"));
        }
        if runs == 0 {
            return Err(Error::invalid("runs must be >= 1"));
        }
        if e.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(Error::invalid("error values must be finite and >= 0"));
        }
        Ok(ErrorSeries { e, runs })
    }

    pub fn values(&self) -> &[f64] {
        &self.e
    }

    pub fn runs(&self) -> usize {
        self.runs
    }

    /// Number of generations covered (indices 0..=generations).
    pub fn generations(&self) -> usize {
        self.e.len() - 1
    }

    pub fn at(&self, t: usize) -> f64 {
        self.e[t]
    }
}

/// ACR series; `at(t)` is defined for `t >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AcrSeries {
    r: Vec<f64>,
}

impl AcrSeries {
    /// `R_t` for `t` in `1..=generations`.
    pub fn at(&self, t: usize) -> f64 {
        assert!(t >= 1, "R_t is defined for t >= 1");
        self.r[t - 1]
    }

    pub fn generations(&self) -> usize {
        self.r.len()
    }

    /// Values for t = 1..=generations.
    pub fn values(&self) -> &[f64] {
        &self.r
    }
}

/// Arithmetic mean of `best_fitness[t]` across runs, accumulated in run
/// order so the result is independent of scheduling.
pub fn sample_mean_fitness(trajectories: &[RunTrajectory], t: usize) -> Result<f64> {
    if trajectories.is_empty() {
        return Err(Error::invalid("mean fitness of an empty batch"));
    }
    let mut sum = 0.0;
    for traj in trajectories {
        let v = traj.best_fitness.get(t).ok_or_else(|| {
            Error::invalid(format!(
                "trajectory of seed {} does not cover generation {t}",
                traj.seed
            ))
        })?;
        sum += v;
    }
    Ok(sum / trajectories.len() as f64)
}

/// Error series `e_t = |mean_t − f*|` over all generations covered by
/// every trajectory.
pub fn error_series(trajectories: &[RunTrajectory], f_star: f64) -> Result<ErrorSeries> {
    if trajectories.is_empty() {
        return Err(Error::invalid("error series of an empty batch"));
    }
    let len = trajectories
        .iter()
        .map(|t| t.best_fitness.len())
        .min()
        .unwrap();
    let e = (0..len)
        .map(|t| sample_mean_fitness(trajectories, t).map(|m| (m - f_star).abs()))
        .collect::<Result<Vec<_>>>()?;
    ErrorSeries::from_values(e, trajectories.len())
}

/// `R_t = 1 − (e_t/e_0)^{1/t}` with the exact-zero rule.
///
/// The power is computed as `exp(ln(e_t/e_0)/t)` — ratio first — so tiny
/// errors at large `t` neither underflow nor overflow. Fails when
/// `e_0 = 0` (a run initialized at the optimum has no defined rate).
pub fn acr_series(errors: &ErrorSeries) -> Result<AcrSeries> {
    let e = errors.values();
    let e0 = e[0];
    if e0 <= ZERO_TOL {
        return Err(Error::DegenerateStart);
    }
    let mut r = Vec::with_capacity(e.len().saturating_sub(1));
    let mut hit_zero = false;
    for (t, &et) in e.iter().enumerate().skip(1) {
        hit_zero = hit_zero || et <= ZERO_TOL;
        if hit_zero {
            r.push(1.0);
        } else {
            r.push(1.0 - ((et / e0).ln() / t as f64).exp());
        }
    }
    Ok(AcrSeries { r })
}

/// One-step ratios `e_t / e_{t−1}` for `t >= 1`; `None` marks entries
/// whose predecessor is zero rather than fabricating a value.
pub fn ratio_series(errors: &ErrorSeries) -> Vec<Option<f64>> {
    let e = errors.values();
    (1..e.len())
        .map(|t| {
            if e[t - 1] <= ZERO_TOL {
                None
            } else {
                Some(e[t] / e[t - 1])
            }
        })
        .collect()
}

/// `log10 e_t` for every generation; zero entries are `None`.
pub fn log_error_series(errors: &ErrorSeries) -> Vec<Option<f64>> {
    errors
        .values()
        .iter()
        .map(|&et| if et <= ZERO_TOL { None } else { Some(et.log10()) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn traj(seed: u64, values: &[f64]) -> RunTrajectory {
        RunTrajectory {
            seed,
            best_fitness: values.to_vec(),
        }
    }

    #[test]
    fn mean_fitness_examples() {
        let ts = [traj(1, &[3.0]), traj(2, &[5.0])];
        assert_eq!(sample_mean_fitness(&ts, 0).unwrap(), 4.0);
        let ts = [traj(1, &[1.0]), traj(2, &[2.0]), traj(3, &[3.0])];
        assert_eq!(sample_mean_fitness(&ts, 0).unwrap(), 2.0);
        let single = [traj(9, &[7.5])];
        assert_eq!(sample_mean_fitness(&single, 0).unwrap(), 7.5);
        assert!(sample_mean_fitness(&[], 0).is_err());
    }

    #[test]
    fn error_series_is_the_gap_to_f_star() {
        let ts = [traj(1, &[200.0, 100.0, 50.0])];
        let e = error_series(&ts, 0.0).unwrap();
        assert_eq!(e.values(), &[200.0, 100.0, 50.0]);
        let constant = [traj(1, &[5.0, 5.0])];
        assert_eq!(error_series(&constant, 5.0).unwrap().values(), &[0.0, 0.0]);
    }

    #[test]
    fn acr_halving_example() {
        // e0 = 100, e2 = 25 -> R_2 = 1 - (1/4)^(1/2) = 0.5
        let e = ErrorSeries::from_values(vec![100.0, 50.0, 25.0], 1).unwrap();
        let r = acr_series(&e).unwrap();
        assert!((r.at(2) - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn acr_is_constant_for_geometric_decay() {
        let c: f64 = 0.8;
        let e: Vec<f64> = (0..50).map(|t| 10.0 * c.powi(t)).collect();
        let r = acr_series(&ErrorSeries::from_values(e, 1).unwrap()).unwrap();
        for t in 1..=50usize.min(r.generations()) {
            assert!((r.at(t) - (1.0 - c)).abs() <= 1e-12, "t = {t}: {}", r.at(t));
        }
    }

    #[test]
    fn zero_error_pins_the_rate_to_one() {
        let e = ErrorSeries::from_values(vec![8.0, 4.0, 2.0, 0.0, 0.0, 0.0], 1).unwrap();
        let r = acr_series(&e).unwrap();
        assert!(r.at(2) < 1.0);
        for t in 3..=5 {
            assert_eq!(r.at(t), 1.0);
        }
    }

    #[test]
    fn degenerate_start_is_an_error() {
        let e = ErrorSeries::from_values(vec![0.0, 0.0], 1).unwrap();
        assert!(matches!(acr_series(&e), Err(Error::DegenerateStart)));
    }

    #[test]
    fn ratio_series_flags_undefined_entries() {
        let e = ErrorSeries::from_values(vec![4.0, 4.0, 2.0, 0.0, 0.0], 1).unwrap();
        let ratios = ratio_series(&e);
        assert_eq!(ratios[0], Some(1.0));
        assert_eq!(ratios[1], Some(0.5));
        assert_eq!(ratios[2], Some(0.0));
        assert_eq!(ratios[3], None);
    }

    #[test]
    fn log_series_examples() {
        let e = ErrorSeries::from_values(vec![1.0, 100.0, 0.0], 1).unwrap();
        let logs = log_error_series(&e);
        assert_eq!(logs[0], Some(0.0));
        assert_eq!(logs[1], Some(2.0));
        assert_eq!(logs[2], None);
    }

    #[test]
    fn log_series_of_geometric_decay_is_affine() {
        let c: f64 = 0.5;
        let e: Vec<f64> = (0..30).map(|t| 4.0 * c.powi(t)).collect();
        let logs = log_error_series(&ErrorSeries::from_values(e, 1).unwrap());
        let slope = c.log10();
        for w in logs.windows(2) {
            let d = w[1].unwrap() - w[0].unwrap();
            assert!((d - slope).abs() <= 1e-12);
        }
    }

    #[test]
    fn stalled_series_rate_decays_to_zero() {
        // e = e0/2 forever: R_t = 1 - 0.5^(1/t) -> 0; at t = 1e4 it is
        // below 1e-3.
        let mut e = vec![1.0];
        e.extend(std::iter::repeat_n(0.5, 10_000));
        let r = acr_series(&ErrorSeries::from_values(e, 1).unwrap()).unwrap();
        let bound = 1.0 - 0.5f64.powf(1.0 / 10_000.0);
        assert!(r.at(10_000) <= bound + 1e-15);
        assert!(r.at(10_000) < 1e-3, "R = {}", r.at(10_000));
        // monotone decay along the stall
        assert!(r.at(10_000) < r.at(100));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        /// Random positive non-increasing series: the rate reconstructs
        /// the error exactly and matches the geometric mean of one-step
        /// ratios.
        #[test]
        fn acr_reconstruction_and_product_form(
            e0 in 1e-6f64..1e6,
            factors in proptest::collection::vec(0.02f64..1.0, 1..120),
        ) {
            let mut e = vec![e0];
            for f in &factors {
                e.push(e.last().unwrap() * f);
            }
            let series = ErrorSeries::from_values(e.clone(), 1).unwrap();
            let r = acr_series(&series).unwrap();
            for t in 1..e.len() {
                prop_assume!(e[t] > ZERO_TOL);
                // reconstruction: e_t = (1 - R_t)^t e_0
                let rebuilt = (1.0 - r.at(t)).powi(t as i32) * e0;
                prop_assert!(
                    (rebuilt - e[t]).abs() <= 1e-12 * e[t],
                    "t = {}: rebuilt {} vs {}", t, rebuilt, e[t]
                );
                // product form: 1 - R_t = geometric mean of ratios
                let mean_log: f64 = (1..=t).map(|k| (e[k] / e[k - 1]).ln()).sum::<f64>() / t as f64;
                let geo = mean_log.exp();
                prop_assert!(
                    ((1.0 - r.at(t)) - geo).abs() <= 1e-10 * geo,
                    "t = {}: {} vs geometric mean {}", t, 1.0 - r.at(t), geo
                );
                // range for non-increasing input
                prop_assert!(r.at(t) >= 0.0 && r.at(t) <= 1.0);
            }
        }
    }
}
