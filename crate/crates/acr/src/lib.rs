//! Average convergence rate (ACR) measurement for elitist evolutionary
//! algorithms on continuous benchmarks.
//!
//! The crate is organized around five concerns:
//!
//! * [`objectives`] — benchmark functions (2-D sphere, 1-D/2-D Rastrigin)
//!   and 1-D landscape analysis: sublevel-set interval decomposition,
//!   stationary points and region classification.
//! * [`engine`] — a seeded, deterministic (1+1) elitist EA with
//!   invariant-σ and adaptive-σ Gaussian mutation.
//! * [`metrics`] — error series `e_t`, the geometric average convergence
//!   rate `R_t = 1 − (e_t/e_0)^{1/t}`, and the classic comparison metrics
//!   `e_t/e_{t−1}` and `log10 e_t`.
//! * [`theory`] — analytic transition probabilities into promising
//!   regions, their Monte Carlo counterparts, and trend checks for the
//!   limit behaviour of `R_t` under invariant vs adaptive generators.
//! * [`rng`] / [`special`] / [`quad`] — supporting numerics: a
//!   counter-based splittable random stream, Gaussian cdf/quantile, and
//!   adaptive Simpson quadrature.
//!
//! With the default `parallel` feature, batch runs and Monte Carlo
//! estimates fan out over rayon; results are collected by index and are
//! bit-identical to the sequential fallback (`--no-default-features`).

// Validations use `!(x > 0.0)`-style comparisons to reject NaN along
// with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod engine;
mod error;
pub mod metrics;
pub mod objectives;
pub mod quad;
pub mod rng;
pub mod special;
pub mod sublevel;
pub mod theory;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
