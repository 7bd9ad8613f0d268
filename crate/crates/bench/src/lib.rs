//! Shared fixtures for the benchmarks.

use morera_core::analysis::TheoremConfig;
use morera_core::geometry::Complex;

/// The main configuration: all centered circles and the pencil through -1
/// with radius floor 1/4.
pub fn standard_config() -> TheoremConfig {
    TheoremConfig::main_theorem(Complex::new(-1.0, 0.0), 0.25).expect("valid configuration")
}

/// Base point with a fiber curve of moderate size.
pub fn base_point() -> Complex {
    Complex::new(0.2, 0.5)
}
