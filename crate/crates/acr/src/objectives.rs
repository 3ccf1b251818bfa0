//! Benchmark objective functions.
//!
//! The case studies are the 2-D sphere and the Rastrigin function in one
//! and two dimensions. The 2-D Rastrigin value is computed literally as
//! the sum of two 1-D values, so separability holds bit-exactly.

use crate::{Error, Result};
use std::f64::consts::TAU;

/// Benchmark identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectiveId {
    Sphere2D,
    Rastrigin2D,
    Rastrigin1D,
}

impl ObjectiveId {
    pub fn name(self) -> &'static str {
        match self {
            ObjectiveId::Sphere2D => "sphere2d",
            ObjectiveId::Rastrigin2D => "rastrigin2d",
            ObjectiveId::Rastrigin1D => "rastrigin1d",
        }
    }
}

/// Axis-aligned box domain.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxDomain {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl BoxDomain {
    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(&xi, (&lo, &hi))| xi >= lo && xi <= hi)
    }
}

/// A benchmark function together with its dimension, optimum value,
/// optimizer set and optional box domain.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveSpec {
    pub id: ObjectiveId,
    pub dimension: usize,
    pub f_star: f64,
    pub optimizers: Vec<Vec<f64>>,
    pub domain: Option<BoxDomain>,
}

impl ObjectiveSpec {
    pub fn sphere2d() -> Self {
        ObjectiveSpec {
            id: ObjectiveId::Sphere2D,
            dimension: 2,
            f_star: 0.0,
            optimizers: vec![vec![0.0, 0.0]],
            domain: None,
        }
    }

    pub fn rastrigin2d() -> Self {
        ObjectiveSpec {
            id: ObjectiveId::Rastrigin2D,
            dimension: 2,
            f_star: 0.0,
            optimizers: vec![vec![0.0, 0.0]],
            domain: None,
        }
    }

    pub fn rastrigin1d() -> Self {
        ObjectiveSpec {
            id: ObjectiveId::Rastrigin1D,
            dimension: 1,
            f_star: 0.0,
            optimizers: vec![vec![0.0]],
            domain: None,
        }
    }

    /// Restrict the spec to a box domain.
    pub fn with_domain(mut self, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != self.dimension || upper.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: lower.len().max(upper.len()),
            });
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l < u)) {
            return Err(Error::invalid("box domain requires lower < upper"));
        }
        self.domain = Some(BoxDomain { lower, upper });
        Ok(self)
    }

    /// Whether `x` lies in the domain (always true when no box is set).
    pub fn in_domain(&self, x: &[f64]) -> bool {
        self.domain.as_ref().is_none_or(|b| b.contains(x))
    }

    pub fn by_name(name: &str) -> Option<ObjectiveSpec> {
        match name {
            "sphere2d" => Some(ObjectiveSpec::sphere2d()),
            "rastrigin2d" => Some(ObjectiveSpec::rastrigin2d()),
            "rastrigin1d" => Some(ObjectiveSpec::rastrigin1d()),
            _ => None,
        }
    }
}

/// 1-D Rastrigin: `10 + x^2 - 10 cos(2 pi x)`.
#[inline]
pub fn rastrigin_1d(x: f64) -> f64 {
    10.0 + x * x - 10.0 * (TAU * x).cos()
}

/// Evaluate the objective at `x`.
///
/// Fails on a dimension mismatch or, when a box domain is set, on a point
/// outside the box. Pure and deterministic.
pub fn evaluate(spec: &ObjectiveSpec, x: &[f64]) -> Result<f64> {
    if x.len() != spec.dimension {
        return Err(Error::DimensionMismatch {
            expected: spec.dimension,
            got: x.len(),
        });
    }
    if !spec.in_domain(x) {
        return Err(Error::OutOfDomain);
    }
    Ok(match spec.id {
        ObjectiveId::Sphere2D => x[0] * x[0] + x[1] * x[1],
        ObjectiveId::Rastrigin2D => rastrigin_1d(x[0]) + rastrigin_1d(x[1]),
        ObjectiveId::Rastrigin1D => rastrigin_1d(x[0]),
    })
}

/// Approximation error `e(x) = |f(x) - f*|`.
pub fn approximation_error(spec: &ObjectiveSpec, x: &[f64]) -> Result<f64> {
    Ok((evaluate(spec, x)? - spec.f_star).abs())
}
