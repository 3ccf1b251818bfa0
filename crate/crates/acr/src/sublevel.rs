//! 1-D Rastrigin landscape analysis: stationary points, sublevel-set
//! interval decomposition and region classification.
//!
//! The strict sublevel set `{y : f(y) < f(x)}` of the 1-D Rastrigin
//! function is a finite union of disjoint intervals. Endpoints are found
//! by scanning at step 1e-3 (the oscillation period is 1, so the scan
//! cannot skip a crossing) and refining each sign change by bisection.
//! Intervals are stored as closed pairs; membership semantics are strict.

use crate::objectives::{rastrigin_1d, ObjectiveId, ObjectiveSpec};
use crate::{Error, Result};
use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

const SCAN_STEP: f64 = 1e-3;
/// All stationary points of the 1-D Rastrigin function lie in
/// [-10 pi, 10 pi]: |2x| <= 20 pi |sin(2 pi x)| forces |x| <= 10 pi.
const STATIONARY_BOUND: f64 = 10.0 * PI;

/// Sorted list of disjoint closed intervals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
        let set = IntervalSet { intervals };
        set.check()?;
        Ok(set)
    }

    fn check(&self) -> Result<()> {
        for w in self.intervals.windows(2) {
            if w[0].1 >= w[1].0 {
                return Err(Error::invalid("intervals overlap"));
            }
        }
        if self.intervals.iter().any(|(lo, hi)| !(lo < hi)) {
            return Err(Error::invalid("interval requires lo < hi"));
        }
        Ok(())
    }

    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    /// Total measure (sum of widths; intervals are disjoint).
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }

    /// Strict-interior membership.
    pub fn contains(&self, y: f64) -> bool {
        self.component_containing(y).is_some()
    }

    /// The interval whose open interior contains `y`, if any.
    pub fn component_containing(&self, y: f64) -> Option<(f64, f64)> {
        self.intervals
            .iter()
            .copied()
            .find(|&(lo, hi)| lo < y && y < hi)
    }
}

/// A stationary point of the 1-D Rastrigin function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub x: f64,
    pub is_minimum: bool,
}

/// Region label for a 1-D query point, by the structure of its sublevel
/// set: many intervals (Multimodal), a single interval around the global
/// optimizer that contains no other local minimizer (Unimodal), or a
/// single spanning interval that does (Outside).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionClass {
    Outside,
    Multimodal,
    Unimodal,
}

fn require_rastrigin1d(spec: &ObjectiveSpec) -> Result<()> {
    if spec.id != ObjectiveId::Rastrigin1D {
        return Err(Error::invalid(format!(
            "expected rastrigin1d, got {}",
            spec.id.name()
        )));
    }
    Ok(())
}

/// Derivative of the 1-D Rastrigin function.
#[inline]
fn rastrigin_1d_deriv(x: f64) -> f64 {
    2.0 * x + 20.0 * PI * (TAU * x).sin()
}

/// All stationary points, minima flagged. The list contains 0 (the global
/// minimizer), lies in [-10 pi, 10 pi] and is closed under negation.
pub fn local_optima_1d(spec: &ObjectiveSpec) -> Result<Vec<StationaryPoint>> {
    require_rastrigin1d(spec)?;
    Ok(positive_stationary_points()
        .iter()
        .rev()
        .map(|p| StationaryPoint {
            x: -p.x,
            is_minimum: p.is_minimum,
        })
        .chain(std::iter::once(StationaryPoint {
            x: 0.0,
            is_minimum: true,
        }))
        .chain(positive_stationary_points().iter().copied())
        .collect())
}

/// Stationary points in (0, 10 pi], ascending. Roots of the derivative are
/// bracketed by a scan and polished by bisection; curvature
/// `2 + 40 pi^2 cos(2 pi x)` splits minima from maxima. Computed once.
fn positive_stationary_points() -> &'static [StationaryPoint] {
    static POINTS: OnceLock<Vec<StationaryPoint>> = OnceLock::new();
    POINTS.get_or_init(compute_positive_stationary_points)
}

fn compute_positive_stationary_points() -> Vec<StationaryPoint> {
    let mut out = Vec::new();
    let hi = STATIONARY_BOUND + 0.5;
    let n = (hi / SCAN_STEP).ceil() as usize;
    let mut prev = SCAN_STEP;
    let mut gprev = rastrigin_1d_deriv(prev);
    for i in 2..=n {
        let y = i as f64 * SCAN_STEP;
        let g = rastrigin_1d_deriv(y);
        if (gprev < 0.0) != (g < 0.0) {
            let root = bisect_root(rastrigin_1d_deriv, prev, y);
            let curvature = 2.0 + 40.0 * PI * PI * (TAU * root).cos();
            out.push(StationaryPoint {
                x: root,
                is_minimum: curvature > 0.0,
            });
        }
        prev = y;
        gprev = g;
    }
    out
}

fn bisect_root<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let negative_at_lo = f(lo) < 0.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == negative_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Boundary of the strict sublevel region inside `[lo, hi]`, where `lo`
/// is inside and `hi` is not.
fn bisect_level_boundary(level: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if rastrigin_1d(mid) < level {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Decomposition of `{y : f(y) < f(x)}` into disjoint closed intervals.
///
/// The function is even, so the scan covers the positive axis and the
/// result is mirrored; the interval containing 0 comes out exactly
/// symmetric. An exact global optimizer (level 0) yields the empty set.
pub fn sublevel_intervals_1d(spec: &ObjectiveSpec, x: f64) -> Result<IntervalSet> {
    require_rastrigin1d(spec)?;
    if !x.is_finite() {
        return Err(Error::invalid("x must be finite"));
    }
    let level = rastrigin_1d(x);
    if level <= 0.0 {
        return Ok(IntervalSet::empty());
    }

    let limit = (x.abs() + 1.0).max(STATIONARY_BOUND + 1.0);
    let n = (limit / SCAN_STEP).ceil() as usize;

    // Scan nodes: the uniform grid plus every stationary point. Any
    // above-level sliver narrower than the step sits around a local
    // maximum, so including the stationary points makes the sign-change
    // detection exhaustive.
    let mut nodes: Vec<f64> = (1..=n).map(|i| i as f64 * SCAN_STEP).collect();
    nodes.extend(
        positive_stationary_points()
            .iter()
            .map(|p| p.x)
            .filter(|&p| p > 0.0 && p < limit),
    );
    nodes.sort_by(f64::total_cmp);

    let mut crossings = Vec::new();
    let mut prev = 0.0;
    let mut was_inside = true; // f(0) = 0 < level
    for &y in &nodes {
        let inside = rastrigin_1d(y) < level;
        if inside != was_inside {
            let boundary = if was_inside {
                bisect_level_boundary(level, prev, y)
            } else {
                bisect_down_boundary(level, prev, y)
            };
            crossings.push(boundary);
            was_inside = inside;
        }
        prev = y;
    }
    debug_assert!(!was_inside, "sublevel set extends past the scan limit");
    debug_assert!(crossings.len() % 2 == 1);

    let mut intervals = Vec::new();
    let b0 = crossings[0];
    intervals.push((-b0, b0));
    for pair in crossings[1..].chunks(2) {
        if let [a, b] = *pair {
            // Tangency guard: keep the interval only if it has width and
            // a strict-interior sample actually lies below the level.
            if a < b && rastrigin_1d(0.5 * (a + b)) < level {
                intervals.push((a, b));
                intervals.push((-b, -a));
            }
        }
    }
    IntervalSet::new(intervals)
}

/// Boundary where the sublevel region begins: `lo` outside, `hi` inside.
fn bisect_down_boundary(level: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if rastrigin_1d(mid) < level {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-12 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Classify the query point by its sublevel structure.
///
/// Errors when `x` is a global optimizer (the region is undefined there).
pub fn classify_region_1d(spec: &ObjectiveSpec, x: f64) -> Result<RegionClass> {
    let set = sublevel_intervals_1d(spec, x)?;
    if set.is_empty() {
        return Err(Error::OptimalQuery);
    }
    if set.len() >= 2 {
        return Ok(RegionClass::Multimodal);
    }
    // Single interval [-b0, b0]: Outside if it swallows any non-global
    // local minimizer, Unimodal otherwise.
    let level = rastrigin_1d(x);
    let has_foreign_minimum = positive_stationary_points()
        .iter()
        .any(|p| p.is_minimum && rastrigin_1d(p.x) < level);
    Ok(if has_foreign_minimum {
        RegionClass::Outside
    } else {
        RegionClass::Unimodal
    })
}

/// Precomputed stationary structure for fast level queries. Segment-wise
/// monotonicity between consecutive stationary points turns the first
/// sublevel crossing into a few bisections instead of a fresh scan.
#[derive(Debug, Clone)]
pub struct RastriginProfile {
    /// Positive stationary points, ascending, with values.
    points: Vec<(StationaryPoint, f64)>,
}

impl RastriginProfile {
    pub fn new() -> Self {
        RastriginProfile {
            points: positive_stationary_points()
                .iter()
                .map(|&p| (p, rastrigin_1d(p.x)))
                .collect(),
        }
    }

    /// Half-width b0 of the symmetric component [-b0, b0] of the strict
    /// sublevel set at `level` (> 0).
    pub fn central_halfwidth(&self, level: f64) -> f64 {
        debug_assert!(level > 0.0);
        let mut seg_start = 0.0;
        for &(p, value) in &self.points {
            if value >= level {
                return bisect_level_boundary(level, seg_start, p.x);
            }
            seg_start = p.x;
        }
        // Beyond the last stationary point f is strictly increasing and
        // f(y) >= y^2, so sqrt(level) bounds the crossing.
        let hi = level.sqrt() + 1.0;
        bisect_level_boundary(level, seg_start, hi)
    }

    /// Whether the sublevel set at `x` has a component beyond [-b0, b0],
    /// i.e. some non-global minimizer strictly better than the level sits
    /// outside the symmetric component.
    pub fn is_multimodal(&self, x: f64) -> bool {
        let level = rastrigin_1d(x);
        if level <= 0.0 {
            return false;
        }
        self.has_component_beyond(self.central_halfwidth(level), level)
    }

    /// Multimodality test with an already-computed half-width.
    pub fn has_component_beyond(&self, b0: f64, level: f64) -> bool {
        self.points
            .iter()
            .any(|&(p, value)| p.is_minimum && p.x > b0 && value < level)
    }
}

impl Default for RastriginProfile {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterRng;
    use proptest::prelude::*;

    fn r1d() -> ObjectiveSpec {
        ObjectiveSpec::rastrigin1d()
    }

    #[test]
    fn stationary_points_satisfy_the_derivative_equation() {
        let pts = local_optima_1d(&r1d()).unwrap();
        assert!(!pts.is_empty());
        for p in &pts {
            let residual = rastrigin_1d_deriv(p.x).abs();
            assert!(
                residual <= 1e-10,
                "residual {residual} at stationary point {}",
                p.x
            );
            assert!(p.x.abs() <= STATIONARY_BOUND + 1e-9);
        }
    }

    #[test]
    fn stationary_points_contain_global_minimizer_and_mirror() {
        let pts = local_optima_1d(&r1d()).unwrap();
        let zero = pts.iter().find(|p| p.x == 0.0).expect("0 missing");
        assert!(zero.is_minimum);
        for p in &pts {
            assert!(
                pts.iter()
                    .any(|q| (q.x + p.x).abs() <= 1e-9 && q.is_minimum == p.is_minimum),
                "no mirror for {}",
                p.x
            );
        }
    }

    #[test]
    fn smallest_positive_minimizer_sits_near_one() {
        let pts = local_optima_1d(&r1d()).unwrap();
        let p1 = pts
            .iter()
            .filter(|p| p.is_minimum && p.x > 0.0)
            .map(|p| p.x)
            .fold(f64::INFINITY, f64::min);
        assert!(p1 > 0.98 && p1 < 1.0, "p1 = {p1}");
        let v = rastrigin_1d(p1);
        assert!(v > 0.9 && v < 1.0, "f(p1) = {v}");
    }

    #[test]
    fn sublevel_of_global_optimizer_is_empty() {
        assert!(sublevel_intervals_1d(&r1d(), 0.0).unwrap().is_empty());
        // Values this close to 0 evaluate to exactly 0 in f64.
        assert!(sublevel_intervals_1d(&r1d(), 1e-10).unwrap().is_empty());
    }

    #[test]
    fn sublevel_of_40_is_a_single_spanning_interval() {
        let set = sublevel_intervals_1d(&r1d(), 40.0).unwrap();
        assert_eq!(set.len(), 1, "intervals: {:?}", set.intervals());
        let (lo, hi) = set.intervals()[0];
        assert!((lo + 40.0).abs() <= 1e-9 && (hi - 40.0).abs() <= 1e-9);
    }

    #[test]
    fn sublevel_near_the_first_basins_has_seven_intervals() {
        for x in [0.3, 0.7] {
            let set = sublevel_intervals_1d(&r1d(), x).unwrap();
            assert_eq!(set.len(), 7, "x = {x}: {:?}", set.intervals());
            for center in [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0] {
                assert!(
                    set.intervals()
                        .iter()
                        .any(|&(lo, hi)| lo <= center && center <= hi),
                    "x = {x}: no interval around {center}"
                );
            }
        }
    }

    #[test]
    fn sublevel_is_symmetric_in_the_query() {
        for x in [0.3, 0.7, 2.2, 5.5] {
            let plus = sublevel_intervals_1d(&r1d(), x).unwrap();
            let minus = sublevel_intervals_1d(&r1d(), -x).unwrap();
            assert_eq!(plus, minus);
        }
    }

    #[test]
    fn sublevel_nesting_is_monotone_in_the_level() {
        // ordered by fitness level, which is not monotone in |x|
        let mut xs = [0.05, 0.3, 0.7, 2.2, 40.0];
        xs.sort_by(|a, b| rastrigin_1d(*a).total_cmp(&rastrigin_1d(*b)));
        for w in xs.windows(2) {
            let inner = sublevel_intervals_1d(&r1d(), w[0]).unwrap();
            let outer = sublevel_intervals_1d(&r1d(), w[1]).unwrap();
            assert!(rastrigin_1d(w[0]) < rastrigin_1d(w[1]));
            for &(lo, hi) in inner.intervals() {
                assert!(
                    outer
                        .intervals()
                        .iter()
                        .any(|&(olo, ohi)| olo <= lo + 1e-9 && hi - 1e-9 <= ohi),
                    "interval ({lo}, {hi}) of sublevel({}) not nested in sublevel({})",
                    w[0],
                    w[1]
                );
            }
        }
    }

    #[test]
    fn measure_matches_grid_estimate() {
        // Grid estimate at step 1e-4 over [-50, 50].
        for x in [0.3, 0.7, 2.2, 40.0] {
            let set = sublevel_intervals_1d(&r1d(), x).unwrap();
            let level = rastrigin_1d(x);
            let step = 1e-4;
            let n = (100.0 / step) as usize;
            let mut count = 0u64;
            for i in 0..=n {
                let y = -50.0 + i as f64 * step;
                if rastrigin_1d(y) < level {
                    count += 1;
                }
            }
            let estimate = count as f64 * step;
            assert!(
                (set.measure() - estimate).abs() <= 1e-3,
                "x = {x}: measure {} vs grid {estimate}",
                set.measure()
            );
        }
    }

    #[test]
    fn classification_matches_the_landscape_structure() {
        assert_eq!(
            classify_region_1d(&r1d(), 0.05).unwrap(),
            RegionClass::Unimodal
        );
        assert_eq!(
            classify_region_1d(&r1d(), 0.7).unwrap(),
            RegionClass::Multimodal
        );
        assert_eq!(
            classify_region_1d(&r1d(), 40.0).unwrap(),
            RegionClass::Outside
        );
        assert!(matches!(
            classify_region_1d(&r1d(), 0.0),
            Err(Error::OptimalQuery)
        ));
    }

    #[test]
    fn classification_is_symmetric() {
        for x in [0.05, 0.3, 0.7, 2.2, 40.0] {
            assert_eq!(
                classify_region_1d(&r1d(), x).unwrap(),
                classify_region_1d(&r1d(), -x).unwrap()
            );
        }
    }

    #[test]
    fn profile_agrees_with_the_interval_decomposition() {
        let profile = RastriginProfile::new();
        let mut rng = CounterRng::from_seed(11);
        for _ in 0..200 {
            let x = rng.next_range(0.01, 31.0);
            let level = rastrigin_1d(x);
            if level <= 0.0 {
                continue;
            }
            let set = sublevel_intervals_1d(&r1d(), x).unwrap();
            let (lo, hi) = set.component_containing(0.0).unwrap();
            let b0 = profile.central_halfwidth(level);
            assert!(
                (hi - b0).abs() <= 1e-9 && (lo + b0).abs() <= 1e-9,
                "x = {x}: b0 {b0} vs interval ({lo}, {hi})"
            );
            assert_eq!(
                profile.is_multimodal(x),
                set.len() >= 2,
                "x = {x}: multimodality disagrees"
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn sublevel_invariants_hold(x in -45.0f64..45.0) {
            let set = sublevel_intervals_1d(&r1d(), x).unwrap();
            let level = rastrigin_1d(x);
            if level == 0.0 {
                prop_assert!(set.is_empty());
                return Ok(());
            }
            // sorted, disjoint, lo < hi
            for w in set.intervals().windows(2) {
                prop_assert!(w[0].1 < w[1].0);
            }
            for &(lo, hi) in set.intervals() {
                prop_assert!(lo < hi);
                // mirror interval exists
                prop_assert!(set
                    .intervals()
                    .iter()
                    .any(|&(mlo, mhi)| (mlo + hi).abs() <= 1e-9 && (mhi + lo).abs() <= 1e-9));
                // strict-interior sample below the level
                prop_assert!(rastrigin_1d(0.5 * (lo + hi)) < level);
            }
            // the component containing 0 is symmetric
            let (lo0, hi0) = set.component_containing(0.0).expect("0 must be inside");
            prop_assert!((lo0 + hi0).abs() <= 1e-9);
        }
    }
}
