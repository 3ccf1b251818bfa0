//! Transition probabilities into promising regions, their Monte Carlo
//! counterparts, and trend checks for the limit behaviour of the ACR.
//!
//! A ρ-promising region of a point `x` is the set of points whose
//! approximation error is strictly below `ρ e(x)`. For the sphere the
//! ρ = 1 region is a disk and its Gaussian mass has a closed quadrature
//! form; for the 1-D Rastrigin function the mass of the symmetric
//! component `[-b0, b0]` reduces to differences of the normal cdf. Every
//! analytic value here has an independent Monte Carlo route driven by
//! [`crate::engine::mutate`], and the test suites hold the two within
//! binomial error.

use crate::engine::{mutate, run_batch, EaConfig, MutationStrategy};
use crate::metrics::{acr_series, error_series};
use crate::objectives::{approximation_error, evaluate, rastrigin_1d, ObjectiveSpec};
use crate::quad::{adaptive_simpson, golden_section_min};
use crate::rng::{derive_seed, CounterRng};
use crate::sublevel::{classify_region_1d, sublevel_intervals_1d, RastriginProfile, RegionClass};
use crate::{Error, Result};
use std::f64::consts::{FRAC_PI_2, PI};

pub use crate::special::normal_cdf;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// 97.5% normal quantile: two-sided 95% coverage.
const WILSON_Z: f64 = 1.959_963_984_540_054;

/// Samples per Monte Carlo chunk. Chunks own disjoint seed-derived
/// substreams, so hit counts are exact integer sums independent of how
/// chunks are scheduled across workers.
const MC_CHUNK: u64 = 1 << 16;

/// A ρ-promising-region query: the set of points with error strictly
/// below `rho * e(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PromisingRegionQuery {
    pub objective: ObjectiveSpec,
    pub x: Vec<f64>,
    pub rho: f64,
}

impl PromisingRegionQuery {
    pub fn new(objective: ObjectiveSpec, x: Vec<f64>, rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(Error::invalid("rho must lie in (0, 1]"));
        }
        let query = PromisingRegionQuery { objective, x, rho };
        if query.error()? <= 0.0 {
            return Err(Error::OptimalQuery);
        }
        Ok(query)
    }

    pub fn error(&self) -> Result<f64> {
        approximation_error(&self.objective, &self.x)
    }
}

/// A Monte Carlo proportion with its 95% Wilson half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityEstimate {
    pub p_hat: f64,
    pub samples: u64,
    pub ci_half_width: f64,
    pub seed: u64,
}

impl ProbabilityEstimate {
    fn from_hits(hits: u64, samples: u64, seed: u64) -> Self {
        let n = samples as f64;
        let p_hat = hits as f64 / n;
        let z2 = WILSON_Z * WILSON_Z;
        let half = WILSON_Z / (1.0 + z2 / n)
            * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt();
        ProbabilityEstimate {
            p_hat,
            samples,
            ci_half_width: half,
            seed,
        }
    }
}

fn count_hits_chunk<F>(root: &CounterRng, chunk: u64, n: u64, hit: &F) -> u64
where
    F: Fn(&mut CounterRng) -> bool,
{
    let mut rng = root.substream(chunk);
    let take = MC_CHUNK.min(n - chunk * MC_CHUNK);
    let mut hits = 0u64;
    for _ in 0..take {
        if hit(&mut rng) {
            hits += 1;
        }
    }
    hits
}

#[cfg(feature = "parallel")]
fn count_hits<F>(n: u64, seed: u64, hit: F) -> u64
where
    F: Fn(&mut CounterRng) -> bool + Sync,
{
    let root = CounterRng::from_seed(seed);
    (0..n.div_ceil(MC_CHUNK))
        .into_par_iter()
        .map(|c| count_hits_chunk(&root, c, n, &hit))
        .sum()
}

#[cfg(not(feature = "parallel"))]
fn count_hits<F>(n: u64, seed: u64, hit: F) -> u64
where
    F: Fn(&mut CounterRng) -> bool + Sync,
{
    count_hits_seq(n, seed, hit)
}

fn count_hits_seq<F>(n: u64, seed: u64, hit: F) -> u64
where
    F: Fn(&mut CounterRng) -> bool,
{
    let root = CounterRng::from_seed(seed);
    (0..n.div_ceil(MC_CHUNK))
        .map(|c| count_hits_chunk(&root, c, n, &hit))
        .sum()
}

/// Gaussian mass of an interval `[a, b]` seen from `x` outside it:
/// `Φ(u/σ) − Φ(l/σ)` with `l`, `u` the nearer and farther endpoint
/// distances. `x` strictly inside `(a, b)` is rejected — the l/u
/// reduction assumes an outside viewpoint.
pub fn hit_probability_interval(x: f64, a: f64, b: f64, sigma: f64) -> Result<f64> {
    if !(a < b) {
        return Err(Error::invalid("interval requires a < b"));
    }
    if !(sigma > 0.0) {
        return Err(Error::invalid("sigma must be > 0"));
    }
    if x > a && x < b {
        return Err(Error::InsideInterval);
    }
    let da = (a - x).abs();
    let db = (b - x).abs();
    let l = da.min(db);
    let u = da.max(db);
    Ok(normal_cdf(u / sigma) - normal_cdf(l / sigma))
}

/// Monte Carlo counterpart of [`hit_probability_interval`]:
/// `y = x + σ z`, counting `y ∈ [a, b]`.
pub fn mc_interval_probability(
    x: f64,
    a: f64,
    b: f64,
    sigma: f64,
    n: u64,
    seed: u64,
) -> Result<ProbabilityEstimate> {
    if !(a < b) || !(sigma > 0.0) {
        return Err(Error::invalid("interval requires a < b and sigma > 0"));
    }
    if n < 1_000 {
        return Err(Error::invalid("n must be >= 1000"));
    }
    let hits = count_hits(n, seed, |rng| {
        let y = x + sigma * rng.next_standard_normal();
        a <= y && y <= b
    });
    Ok(ProbabilityEstimate::from_hits(hits, n, seed))
}

/// The σ that maximizes the interval hit probability when `0 < l < u`:
/// the stationarity condition `ln u − ln l = (u² − l²) / (2 σ²)` solved in
/// closed form. `l = 0` has no interior maximizer (the probability is
/// strictly decreasing in σ) and is signalled distinctly.
pub fn optimal_sigma(l: f64, u: f64) -> Result<f64> {
    if l == 0.0 {
        return Err(Error::NoInteriorMaximizer);
    }
    if !(l > 0.0 && u > l) {
        return Err(Error::invalid("requires 0 < l < u"));
    }
    Ok(((u * u - l * l) / (2.0 * (u / l).ln())).sqrt())
}

/// Gaussian mass of the promising region of a sphere point at radius `r`
/// under isotropic mutation strength `σ`:
/// `1/2 − (1/π) ∫_0^{π/2} exp(−2 (r/σ)² cos²θ) dθ`, by adaptive Simpson
/// to 1e-10 absolute. The integrand is the `exp(−2β)·exp(2β sin²θ)` form
/// merged so large `r/σ` cannot overflow.
pub fn sphere_promising_probability(r: f64, sigma: f64) -> f64 {
    debug_assert!(r > 0.0 && sigma > 0.0);
    let beta = (r / sigma) * (r / sigma);
    let integral = adaptive_simpson(
        |theta| {
            let c = theta.cos();
            (-2.0 * beta * c * c).exp()
        },
        0.0,
        FRAC_PI_2,
        1e-11,
        40,
    );
    0.5 - integral / PI
}

/// Monte Carlo estimate of the mass of the ρ-promising region under one
/// mutation step: the fraction of children with `e(y) < ρ e(x)`.
/// Out-of-domain children never count.
pub fn mc_promising_probability(
    query: &PromisingRegionQuery,
    strategy: &MutationStrategy,
    n: u64,
    seed: u64,
) -> Result<ProbabilityEstimate> {
    let ex = query.error()?;
    if ex <= 0.0 {
        return Err(Error::OptimalQuery);
    }
    if n < 1_000 {
        return Err(Error::invalid("n must be >= 1000"));
    }
    strategy.validate(query.objective.dimension)?;
    let threshold = query.rho * ex;
    let objective = &query.objective;
    let x = &query.x;
    let hits = count_hits(n, seed, |rng| {
        let y = mutate(x, strategy, rng);
        evaluate(objective, &y)
            .map(|fy| (fy - objective.f_star).abs() < threshold)
            .unwrap_or(false)
    });
    Ok(ProbabilityEstimate::from_hits(hits, n, seed))
}

/// Sequential fallback of [`mc_promising_probability`]; identical output.
pub fn mc_promising_probability_seq(
    query: &PromisingRegionQuery,
    strategy: &MutationStrategy,
    n: u64,
    seed: u64,
) -> Result<ProbabilityEstimate> {
    let ex = query.error()?;
    if ex <= 0.0 {
        return Err(Error::OptimalQuery);
    }
    if n < 1_000 {
        return Err(Error::invalid("n must be >= 1000"));
    }
    strategy.validate(query.objective.dimension)?;
    let threshold = query.rho * ex;
    let objective = &query.objective;
    let x = &query.x;
    let hits = count_hits_seq(n, seed, |rng| {
        let y = mutate(x, strategy, rng);
        evaluate(objective, &y)
            .map(|fy| (fy - objective.f_star).abs() < threshold)
            .unwrap_or(false)
    });
    Ok(ProbabilityEstimate::from_hits(hits, n, seed))
}

/// σ policy for the 1-D Rastrigin component probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaMode {
    /// σ = x, the coordinate-adaptive choice.
    SigmaEqualsX,
}

/// Probability of jumping from `x > 0` into the symmetric sublevel
/// component `[-b0, b0]` of the 1-D Rastrigin function with σ = x.
///
/// Outside/Unimodal points have `l0 = 0` and the value collapses to
/// `Φ(2) − 1/2`; Multimodal points give `Φ(1 + b0/x) − Φ(1 − b0/x)`.
pub fn rastrigin_component_probability(x: f64, _mode: SigmaMode) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::invalid("x must be > 0"));
    }
    let spec = ObjectiveSpec::rastrigin1d();
    match classify_region_1d(&spec, x)? {
        RegionClass::Outside | RegionClass::Unimodal => Ok(normal_cdf(2.0) - 0.5),
        RegionClass::Multimodal => {
            let set = sublevel_intervals_1d(&spec, x)?;
            let (_, b0) = set
                .component_containing(0.0)
                .expect("non-optimal query keeps 0 inside");
            Ok(normal_cdf(1.0 + b0 / x) - normal_cdf(1.0 - b0 / x))
        }
    }
}

/// Monte Carlo counterpart of [`rastrigin_component_probability`]: children
/// `y = x + x z`, counted when they land in the component of the global
/// optimizer within the sublevel decomposition.
pub fn mc_rastrigin_component_probability(x: f64, n: u64, seed: u64) -> Result<ProbabilityEstimate> {
    if !(x > 0.0) {
        return Err(Error::invalid("x must be > 0"));
    }
    if n < 1_000 {
        return Err(Error::invalid("n must be >= 1000"));
    }
    let spec = ObjectiveSpec::rastrigin1d();
    let set = sublevel_intervals_1d(&spec, x)?;
    let (lo, hi) = set.component_containing(0.0).ok_or(Error::OptimalQuery)?;
    let hits = count_hits(n, seed, |rng| {
        let y = x + x * rng.next_standard_normal();
        lo < y && y < hi
    });
    Ok(ProbabilityEstimate::from_hits(hits, n, seed))
}

/// Uniform lower-bound data for the coordinate-adaptive strategy on the
/// 1-D Rastrigin multimodal region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultimodalBound {
    /// Argmin of `b0(x)/x` over the multimodal region.
    pub x_at_min: f64,
    /// The minimal ratio `b0(x)/x`.
    pub halfwidth_ratio: f64,
    /// Squared cdf span at the minimal ratio:
    /// `{Φ(1 + ratio) − Φ(1 − ratio)}²`.
    pub span_squared: f64,
    /// The uniform lower bound: half the squared span.
    pub c: f64,
}

/// Minimize `h/x = b0(x)/x` over the multimodal region by a dense scan
/// plus golden-section refinement, then assemble the bound constants.
///
/// The true infimum over the whole region is replaced by a scan minimum
/// with local refinement; the scan step (5e-4) is finer than the
/// landscape's unit oscillation by three orders of magnitude.
pub fn multimodal_bound() -> MultimodalBound {
    let profile = RastriginProfile::new();
    let ratio = |x: f64| -> Option<f64> {
        let level = rastrigin_1d(x);
        if level <= 0.0 {
            return None;
        }
        let b0 = profile.central_halfwidth(level);
        if profile.has_component_beyond(b0, level) {
            Some(b0 / x)
        } else {
            None
        }
    };

    let step = 5e-4;
    let n = (10.0 * PI / step) as usize;
    let mut best_x = f64::NAN;
    let mut best_ratio = f64::INFINITY;
    for i in 1..=n {
        let x = i as f64 * step;
        if let Some(r) = ratio(x) {
            if r < best_ratio {
                best_ratio = r;
                best_x = x;
            }
        }
    }
    debug_assert!(best_x.is_finite(), "no multimodal point found");

    // The minimizer is interior and smooth; refine within one scan cell.
    let x_at_min = golden_section_min(
        |x| ratio(x).unwrap_or(f64::INFINITY),
        best_x - step,
        best_x + step,
        1e-10,
    );
    let halfwidth_ratio = ratio(x_at_min).unwrap_or(best_ratio);
    let span = normal_cdf(1.0 + halfwidth_ratio) - normal_cdf(1.0 - halfwidth_ratio);
    let span_squared = span * span;
    MultimodalBound {
        x_at_min,
        halfwidth_ratio,
        span_squared,
        c: 0.5 * span_squared,
    }
}

/// A positive-adaptive certificate: contraction factor `rho0` and the
/// uniform transition-probability bound `c_rho` at that contraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveBound {
    pub rho0: f64,
    pub c_rho: f64,
    pub c: f64,
}

impl AdaptiveBound {
    /// Generic constant `C = (1 − rho0) · C_rho`.
    pub fn generic(rho0: f64, c_rho: f64) -> Self {
        AdaptiveBound {
            rho0,
            c_rho,
            c: (1.0 - rho0) * c_rho,
        }
    }
}

/// Sphere bound when `r/σ` never falls below `ratio_bound`:
/// `C = (1/8) (1 − exp(−ratio_bound²))`.
///
/// The contraction factor realizes the continuity argument
/// constructively: a bisection finds where the Monte Carlo ρ-promising
/// mass stops exceeding the full promising mass minus `ε = C`, and `rho0`
/// is the known-valid edge of that bracket.
pub fn sphere_adaptive_bound(ratio_bound: f64) -> AdaptiveBound {
    debug_assert!(ratio_bound > 0.0);
    let c = 0.125 * (1.0 - (-ratio_bound * ratio_bound).exp());

    // Worst case allowed by the ratio bound: r/σ exactly ratio_bound.
    let r = 1.0;
    let sigma = 1.0 / ratio_bound;
    let p_full = sphere_promising_probability(r, sigma);
    let target = p_full - c;

    let objective = ObjectiveSpec::sphere2d();
    let x = vec![r, 0.0];
    let strategy = MutationStrategy::InvariantSigma(vec![sigma, sigma]);
    let mass_at = |rho: f64| -> f64 {
        let query = PromisingRegionQuery::new(objective.clone(), x.clone(), rho)
            .expect("non-optimal query");
        mc_promising_probability(&query, &strategy, 200_000, 0x5EED_CAFE)
            .expect("estimate")
            .p_hat
    };

    let mut lo = 1e-3;
    let mut hi = 1.0;
    if mass_at(lo) > target {
        // Even tiny contractions retain enough mass.
        return AdaptiveBound {
            rho0: lo,
            c_rho: c,
            c,
        };
    }
    for _ in 0..20 {
        let mid = 0.5 * (lo + hi);
        if mass_at(mid) > target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    AdaptiveBound {
        rho0: hi,
        c_rho: c,
        c,
    }
}

/// One named pass/fail assertion inside a trend report.
#[derive(Debug, Clone, PartialEq)]
pub struct TrendAssertion {
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Empirical ACR values at checkpoints plus the assertions made on them.
#[derive(Debug, Clone, PartialEq)]
pub struct TrendReport {
    pub checkpoints: Vec<usize>,
    pub r_values: Vec<f64>,
    pub assertions: Vec<TrendAssertion>,
}

impl TrendReport {
    pub fn pass(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn r_at(&self, t: usize) -> Option<f64> {
        self.checkpoints
            .iter()
            .position(|&c| c == t)
            .map(|i| self.r_values[i])
    }
}

fn acr_at_checkpoints(
    config: &EaConfig,
    runs: usize,
    root_seed: u64,
    checkpoints: &[usize],
) -> Result<Vec<f64>> {
    if runs == 0 {
        return Err(Error::invalid("runs must be >= 1"));
    }
    if checkpoints.is_empty() {
        return Err(Error::invalid("checkpoints must be non-empty"));
    }
    if checkpoints
        .iter()
        .any(|&t| t == 0 || t > config.generations)
    {
        return Err(Error::invalid("checkpoints must lie in [1, generations]"));
    }
    let seeds: Vec<u64> = (0..runs).map(|i| derive_seed(root_seed, i as u64)).collect();
    let batch = run_batch(config, &seeds)?;
    let errors = error_series(&batch, config.objective.f_star)?;
    let acr = acr_series(&errors)?;
    Ok(checkpoints.iter().map(|&t| acr.at(t)).collect())
}

/// Empirical check that an invariant generator drives the ACR down: the
/// final checkpoint must fall below the first and below `final_threshold`.
pub fn verify_vanishing_rate(
    config: &EaConfig,
    runs: usize,
    root_seed: u64,
    checkpoints: &[usize],
    final_threshold: f64,
) -> Result<TrendReport> {
    if !config.strategy.is_invariant() {
        return Err(Error::invalid(
            "the vanishing-rate check applies to landscape-invariant strategies",
        ));
    }
    let r = acr_at_checkpoints(config, runs, root_seed, checkpoints)?;
    let first = r[0];
    let last = *r.last().unwrap();
    let assertions = vec![
        TrendAssertion {
            name: "final_rate_below_threshold",
            value: last,
            bound: final_threshold,
            pass: last <= final_threshold,
        },
        TrendAssertion {
            name: "final_rate_below_first",
            value: last,
            bound: first,
            pass: last < first,
        },
    ];
    Ok(TrendReport {
        checkpoints: checkpoints.to_vec(),
        r_values: r,
        assertions,
    })
}

/// Empirical check that a positive-adaptive generator keeps the ACR
/// bounded away from zero: every checkpoint past `burn_in` stays at or
/// above `c`, and the last two checkpoints sit within `stability_band`
/// of each other unless the rate has pinned to 1 (an exact-zero error).
pub fn verify_positive_rate(
    config: &EaConfig,
    runs: usize,
    root_seed: u64,
    checkpoints: &[usize],
    c: f64,
    burn_in: usize,
    stability_band: f64,
) -> Result<TrendReport> {
    if config.strategy.is_invariant() {
        return Err(Error::invalid(
            "the positive-rate check applies to landscape-adaptive strategies",
        ));
    }
    let r = acr_at_checkpoints(config, runs, root_seed, checkpoints)?;
    let past: Vec<f64> = checkpoints
        .iter()
        .zip(&r)
        .filter(|(&t, _)| t > burn_in)
        .map(|(_, &v)| v)
        .collect();
    if past.is_empty() {
        return Err(Error::invalid("no checkpoints past the burn-in"));
    }
    let min_past = past.iter().copied().fold(f64::INFINITY, f64::min);
    let last = *r.last().unwrap();
    let stability_gap = if r.len() >= 2 {
        (r[r.len() - 1] - r[r.len() - 2]).abs()
    } else {
        0.0
    };
    let assertions = vec![
        TrendAssertion {
            name: "rate_stays_above_bound",
            value: min_past,
            bound: c,
            pass: min_past >= c,
        },
        TrendAssertion {
            name: "rate_stabilizes_or_hits_one",
            value: stability_gap,
            bound: stability_band,
            pass: stability_gap <= stability_band || last == 1.0,
        },
    ];
    Ok(TrendReport {
        checkpoints: checkpoints.to_vec(),
        r_values: r,
        assertions,
    })
}
