use thiserror::Error;

use crate::expr::EvalError;
use crate::geometry::{Circle, Complex};

/// Errors produced by the geometric, spectral and fiber computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter {name} = {value} outside admissible range [{lo}, {hi}]")]
    ParameterDomain {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("point {point} outside the domain: {reason}")]
    Domain { point: Complex, reason: String },

    #[error("invalid value: {0}")]
    Invalid(String),

    #[error("sampling failed on circle {circle} at theta = {theta}: {reason}")]
    Sampling {
        circle: Circle,
        theta: f64,
        reason: String,
    },

    #[error("function does not extend holomorphically from circle {circle} (negative energy {negative_energy:.3e})")]
    MoreraFailure {
        circle: Circle,
        negative_energy: f64,
    },

    #[error("extension test inconclusive on circle {circle}: trace still aliased at {samples} samples")]
    Inconclusive { circle: Circle, samples: usize },

    #[error("point {point} lies within {distance:.3e} of the fiber curve")]
    NearCurve { point: Complex, distance: f64 },

    #[error("no intersection: {0}")]
    NoIntersection(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("quadrature did not converge: last difference {difference:.3e} at {nodes} nodes per piece")]
    NoConvergence { difference: f64, nodes: usize },

    #[error(transparent)]
    Eval(#[from] EvalError),
}

pub type Result<T> = std::result::Result<T, Error>;
