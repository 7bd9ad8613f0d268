//! Numerical tests for holomorphic extendability of a function on the unit
//! disc from two families of circles: circles centered at the origin and
//! circles through a fixed boundary point.
//!
//! The building blocks are a spectral Morera test on single circles
//! ([`extension`]), the semiquadric lift of circle families ([`semiquadric`]),
//! fiber curves and their Cauchy integrals ([`fiber`]), and family sweeps
//! that combine into an overall verdict ([`analysis`]).

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod expr;
pub mod extension;
pub mod fiber;
pub mod geometry;
pub mod grid;
pub mod oracle;
pub mod quadrature;
pub mod semiquadric;
pub mod zoo;

pub use analysis::{
    verdict, Classification, FamilyConfig, FamilyKind, Report, TheoremConfig, Verdict,
};
pub use error::{Error, Result};
pub use expr::{parse, Expr};
pub use extension::{analyze_circle, extension_test, CircleAnalysis, MoreraOptions};
pub use fiber::{fiber_curve, fiber_integral, FiberCurve, FiberOptions};
pub use geometry::{Circle, Complex, PencilConfig};
pub use oracle::Oracle;
pub use semiquadric::Semiquadric;
