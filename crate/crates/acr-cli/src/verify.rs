//! The verification check battery behind `acr verify`.
//!
//! Every analytic probability is held against an independent Monte Carlo
//! estimate within four binomial standard errors, the closed-form σ
//! optimizer against a golden-section scan, and the rate-limit behaviour
//! of invariant vs adaptive generators against seeded batch experiments.
//! All checks are deterministic given the battery seed.

use crate::report::CheckRow;
use acr::engine::{EaConfig, MutationStrategy};
use acr::metrics::{acr_series, ErrorSeries};
use acr::objectives::ObjectiveSpec;
use acr::quad::golden_section_min;
use acr::rng::derive_seed;
use acr::theory::{
    hit_probability_interval, mc_interval_probability, mc_promising_probability,
    mc_rastrigin_component_probability, multimodal_bound, normal_cdf, optimal_sigma,
    rastrigin_component_probability, sphere_adaptive_bound, sphere_promising_probability,
    verify_vanishing_rate, verify_positive_rate, PromisingRegionQuery, SigmaMode,
};

/// Number of rows `verify_all` produces.
pub const CHECK_COUNT: usize = 18;

const MC_SAMPLES: u64 = 1_000_000;
const TREND_CHECKPOINTS: [usize; 4] = [101, 201, 301, 401];

fn binomial_4se(p: f64, n: u64) -> f64 {
    4.0 * (p * (1.0 - p) / n as f64).sqrt()
}

/// How many four-standard-error budgets the analytic value sits away
/// from the Monte Carlo estimate; consistency means <= 1.
fn consistency_gap(analytic: f64, p_hat: f64, n: u64) -> f64 {
    (analytic - p_hat).abs() / binomial_4se(p_hat.max(1e-9), n)
}

/// Run the full battery. Deterministic in `seed`.
pub fn verify_all(seed: u64) -> Vec<CheckRow> {
    let mut rows = Vec::with_capacity(CHECK_COUNT);

    // Φ itself: frozen reference value and the symmetry identity.
    let phi2 = normal_cdf(2.0);
    rows.push(CheckRow {
        check_id: "phi_value_at_two",
        pass: (phi2 - 0.977_249_868_051_820_8).abs() <= 1e-12,
        value: phi2,
        bound: 1e-12,
        ci: None,
    });
    let sym_gap = [0.5, 1.0, 3.0, 6.0]
        .iter()
        .map(|&x| (normal_cdf(x) + normal_cdf(-x) - 1.0).abs())
        .fold(0.0, f64::max);
    rows.push(CheckRow {
        check_id: "phi_symmetry",
        pass: sym_gap <= 1e-14,
        value: sym_gap,
        bound: 1e-14,
        ci: None,
    });

    // Interval transition mass vs Monte Carlo, five viewpoints.
    let cases = [
        (2.0, 0.0, 1.0, 1.0),
        (1.0, 1.0, 3.0, 1.0),
        (-0.5, 0.0, 2.0, 0.5),
        (3.0, -1.0, 2.5, 2.0),
        (0.0, 0.5, 0.8, 0.25),
    ];
    let mut worst = 0.0f64;
    let mut worst_ci = 0.0;
    for (k, &(x, a, b, sigma)) in cases.iter().enumerate() {
        let analytic = hit_probability_interval(x, a, b, sigma).expect("outside viewpoint");
        let mc = mc_interval_probability(x, a, b, sigma, MC_SAMPLES, derive_seed(seed, k as u64))
            .expect("estimate");
        let ratio = consistency_gap(analytic, mc.p_hat, MC_SAMPLES);
        if ratio > worst {
            worst = ratio;
            worst_ci = mc.ci_half_width;
        }
    }
    rows.push(CheckRow {
        check_id: "interval_mass_vs_mc",
        pass: worst <= 1.0,
        value: worst,
        bound: 1.0,
        ci: Some(worst_ci),
    });

    // l = 0: mass strictly decreasing in sigma.
    let sigma_grid = [0.25, 0.5, 1.0, 2.0, 4.0];
    let masses: Vec<f64> = sigma_grid
        .iter()
        .map(|&s| hit_probability_interval(1.0, 1.0, 3.0, s).unwrap())
        .collect();
    let min_drop = masses
        .windows(2)
        .map(|w| w[0] - w[1])
        .fold(f64::INFINITY, f64::min);
    rows.push(CheckRow {
        check_id: "interval_mass_sigma_monotone",
        pass: min_drop > 0.0,
        value: min_drop,
        bound: 0.0,
        ci: None,
    });

    // Closed-form optimal sigma vs golden-section argmax, and its bound.
    let (l, u) = (1.0, 2.0);
    let s0 = optimal_sigma(l, u).unwrap();
    let golden = golden_section_min(
        |s| -hit_probability_interval(0.0, l, u, s).unwrap(),
        0.01,
        10.0,
        1e-6,
    );
    rows.push(CheckRow {
        check_id: "optimal_sigma_matches_argmax",
        pass: (s0 - golden).abs() <= 1e-3,
        value: (s0 - golden).abs(),
        bound: 1e-3,
        ci: None,
    });
    rows.push(CheckRow {
        check_id: "optimal_sigma_below_midpoint",
        pass: s0 <= 0.5 * (l + u),
        value: s0,
        bound: 0.5 * (l + u),
        ci: None,
    });

    // Sphere promising mass: quadrature vs Monte Carlo over r/sigma grid.
    let ratios = [0.25, 0.5, 1.0, 2.0, 4.0];
    let mut worst = 0.0f64;
    let mut worst_ci = 0.0;
    let mut min_margin = f64::INFINITY;
    for (k, &ratio) in ratios.iter().enumerate() {
        let (r, sigma) = (ratio, 1.0);
        let analytic = sphere_promising_probability(r, sigma);
        let query = PromisingRegionQuery::new(ObjectiveSpec::sphere2d(), vec![r, 0.0], 1.0)
            .expect("non-optimal");
        let strategy = MutationStrategy::InvariantSigma(vec![sigma, sigma]);
        let mc = mc_promising_probability(&query, &strategy, MC_SAMPLES, derive_seed(seed, 100 + k as u64))
            .expect("estimate");
        let gap = consistency_gap(analytic, mc.p_hat, MC_SAMPLES);
        if gap > worst {
            worst = gap;
            worst_ci = mc.ci_half_width;
        }
        min_margin = min_margin.min(analytic - 0.25 * (1.0 - (-ratio * ratio).exp()));
    }
    rows.push(CheckRow {
        check_id: "sphere_mass_vs_mc",
        pass: worst <= 1.0,
        value: worst,
        bound: 1.0,
        ci: Some(worst_ci),
    });
    rows.push(CheckRow {
        check_id: "sphere_mass_above_quarter_bound",
        pass: min_margin > 0.0,
        value: min_margin,
        bound: 0.0,
        ci: None,
    });
    let vanish = sphere_promising_probability(1e-3, 1.0);
    rows.push(CheckRow {
        check_id: "sphere_mass_vanishes_with_radius",
        pass: vanish < 1e-5 && vanish > 0.0,
        value: vanish,
        bound: 1e-5,
        ci: None,
    });

    // Rastrigin component mass vs Monte Carlo, outside and multimodal.
    for (check_id, x, tag) in [
        ("rastrigin_outside_mass_vs_mc", 40.0, 200u64),
        ("rastrigin_multimodal_mass_vs_mc", 0.7, 201),
    ] {
        let analytic = rastrigin_component_probability(x, SigmaMode::SigmaEqualsX).unwrap();
        let mc = mc_rastrigin_component_probability(x, MC_SAMPLES, derive_seed(seed, tag)).unwrap();
        let tol = binomial_4se(analytic, MC_SAMPLES);
        rows.push(CheckRow {
            check_id,
            pass: (analytic - mc.p_hat).abs() <= tol,
            value: (analytic - mc.p_hat).abs(),
            bound: tol,
            ci: Some(mc.ci_half_width),
        });
    }

    // The multimodal lower-bound constants.
    let bound = multimodal_bound();
    let span = normal_cdf(1.0 + bound.halfwidth_ratio) - normal_cdf(1.0 - bound.halfwidth_ratio);
    rows.push(CheckRow {
        check_id: "multimodal_bound_positive",
        pass: bound.c > 0.0
            && bound.halfwidth_ratio > 0.0
            && bound.halfwidth_ratio <= 1.0
            && normal_cdf(2.0) - 0.5 >= span,
        value: bound.c,
        bound: 0.0,
        ci: None,
    });

    // Invariant generators: the rate sinks toward zero.
    let sphere = ObjectiveSpec::sphere2d();
    let rastrigin = ObjectiveSpec::rastrigin2d();
    let sphere_inv = EaConfig::new(
        sphere.clone(),
        MutationStrategy::InvariantSigma(vec![1.0, 1.0]),
        vec![10.0, 10.0],
        500,
    )
    .unwrap();
    let report = verify_vanishing_rate(
        &sphere_inv,
        100,
        derive_seed(seed, 300),
        &TREND_CHECKPOINTS,
        0.10,
    )
    .unwrap();
    rows.push(CheckRow {
        check_id: "invariant_rate_vanishes_sphere",
        pass: report.pass(),
        value: *report.r_values.last().unwrap(),
        bound: 0.10,
        ci: None,
    });
    let rastrigin_inv = EaConfig::new(
        rastrigin.clone(),
        MutationStrategy::InvariantSigma(vec![1.0, 1.0]),
        vec![10.0, 10.0],
        500,
    )
    .unwrap();
    let report = verify_vanishing_rate(
        &rastrigin_inv,
        100,
        derive_seed(seed, 301),
        &TREND_CHECKPOINTS,
        0.05,
    )
    .unwrap();
    rows.push(CheckRow {
        check_id: "invariant_rate_vanishes_rastrigin",
        pass: report.pass(),
        value: *report.r_values.last().unwrap(),
        bound: 0.05,
        ci: None,
    });

    // Adaptive generators: the rate stays above the analytic constants.
    let sphere_adaptive = EaConfig::new(
        sphere,
        MutationStrategy::AdaptiveNorm(1.0),
        vec![10.0, 10.0],
        500,
    )
    .unwrap();
    let c_sphere = sphere_adaptive_bound(1.0).c;
    let report = verify_positive_rate(
        &sphere_adaptive,
        100,
        derive_seed(seed, 302),
        &TREND_CHECKPOINTS,
        c_sphere,
        50,
        0.10,
    )
    .unwrap();
    rows.push(CheckRow {
        check_id: "adaptive_rate_bounded_below_sphere",
        pass: report.pass(),
        value: report
            .r_values
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min),
        bound: c_sphere,
        ci: None,
    });

    let rastrigin_adaptive = EaConfig::new(
        rastrigin,
        MutationStrategy::AdaptiveCoordinate,
        vec![10.0, 10.0],
        500,
    )
    .unwrap();
    let report = verify_positive_rate(
        &rastrigin_adaptive,
        100,
        derive_seed(seed, 303),
        &TREND_CHECKPOINTS,
        bound.c,
        50,
        0.10,
    )
    .unwrap();
    rows.push(CheckRow {
        check_id: "adaptive_rate_bounded_below_rastrigin",
        pass: report.pass(),
        value: report
            .r_values
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min),
        bound: bound.c,
        ci: None,
    });

    // Exact-zero pinning: across ten replications at least one batch
    // drives the mean error to exactly zero at a late checkpoint.
    let mut pinned = 0usize;
    for rep in 0..10u64 {
        let report = verify_positive_rate(
            &rastrigin_adaptive,
            100,
            derive_seed(seed, 400 + rep),
            &TREND_CHECKPOINTS,
            bound.c,
            50,
            f64::INFINITY,
        )
        .unwrap();
        let hit = report
            .checkpoints
            .iter()
            .zip(&report.r_values)
            .any(|(&t, &r)| t >= 201 && r == 1.0);
        if hit {
            pinned += 1;
        }
    }
    rows.push(CheckRow {
        check_id: "adaptive_rate_pins_to_one_rastrigin",
        pass: pinned >= 1,
        value: pinned as f64,
        bound: 1.0,
        ci: None,
    });

    // A stalled error series has a vanishing rate.
    let mut e = vec![1.0];
    e.extend(std::iter::repeat_n(0.5, 10_000));
    let acr = acr_series(&ErrorSeries::from_values(e, 1).unwrap()).unwrap();
    rows.push(CheckRow {
        check_id: "stalled_rate_decays",
        pass: acr.at(10_000) < 1e-3,
        value: acr.at(10_000),
        bound: 1e-3,
        ci: None,
    });

    debug_assert_eq!(rows.len(), CHECK_COUNT);
    rows
}
