//! The spectral extension test.
//!
//! A continuous trace on a circle extends holomorphically into the disc iff
//! all of its negative-index Fourier coefficients vanish. The discrete test
//! samples the trace at `N` equispaced angles, transforms, and compares the
//! negative-frequency energy against the total energy. A second band
//! (`|k| >= N/4`) guards against undersampled traces whose high positive
//! frequencies would alias into the negative half.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc as Shared;

use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{is_finite, Circle, Complex};
use crate::oracle::Oracle;

pub const DEFAULT_SAMPLES: usize = 256;
pub const MAX_SAMPLES: usize = 4096;
pub const DEFAULT_MORERA_TOL: f64 = 1e-8;
pub const MIN_SAMPLES: usize = 8;

/// Absolute energy floor added to the total energy so that a vanishing trace
/// passes rather than dividing by zero.
const ENERGY_FLOOR: f64 = f64::MIN_POSITIVE;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn forward_plan(n: usize) -> Shared<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n))
}

fn check_sample_count(n: usize) -> Result<()> {
    if n < MIN_SAMPLES || !n.is_power_of_two() {
        return Err(Error::Invalid(format!(
            "sample count {n} must be a power of two >= {MIN_SAMPLES}"
        )));
    }
    Ok(())
}

/// Samples of `f` at `center + radius * exp(2 pi i k / N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleTrace {
    pub circle: Circle,
    pub values: Vec<Complex>,
}

impl CircleTrace {
    pub fn sample<O: Oracle + ?Sized>(f: &O, circle: &Circle, n: usize) -> Result<Self> {
        check_sample_count(n)?;
        let mut values = Vec::with_capacity(n);
        for k in 0..n {
            let theta = 2.0 * PI * k as f64 / n as f64;
            let z = circle.point_at(theta);
            let v = f.eval(z).map_err(|e| Error::Sampling {
                circle: *circle,
                theta,
                reason: e.to_string(),
            })?;
            if !is_finite(v) {
                return Err(Error::Sampling {
                    circle: *circle,
                    theta,
                    reason: format!("non-finite value {v}"),
                });
            }
            values.push(v);
        }
        Ok(Self {
            circle: *circle,
            values,
        })
    }

    pub fn sample_count(&self) -> usize {
        self.values.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierData {
    pub circle: Circle,
    /// `c_k` for `k = -N/2 .. N/2 - 1`, in that order.
    pub coefficients: Vec<Complex>,
    pub tail_energy_negative: f64,
    pub tail_energy_high: f64,
    pub total_energy: f64,
}

impl FourierData {
    pub fn from_trace(trace: &CircleTrace) -> Result<Self> {
        let n = trace.sample_count();
        check_sample_count(n)?;
        let mut buf = trace.values.clone();
        forward_plan(n).process(&mut buf);
        let scale = 1.0 / n as f64;
        let half = n / 2;
        // FFT bin m holds k = m for m < N/2 and k = m - N otherwise.
        let mut coefficients = Vec::with_capacity(n);
        coefficients.extend(buf[half..].iter().map(|c| c * scale));
        coefficients.extend(buf[..half].iter().map(|c| c * scale));

        let (mut total, mut negative, mut high) = (0.0, 0.0, 0.0);
        let quarter = (n / 4) as i64;
        for (i, c) in coefficients.iter().enumerate() {
            let k = i as i64 - half as i64;
            let e = c.norm_sqr();
            total += e;
            if k < 0 {
                negative += e;
            }
            if k.abs() >= quarter {
                high += e;
            }
        }
        Ok(Self {
            circle: trace.circle,
            coefficients,
            tail_energy_negative: negative,
            tail_energy_high: high,
            total_energy: total,
        })
    }

    pub fn sample_count(&self) -> usize {
        self.coefficients.len()
    }

    /// `c_k`, or `None` outside `[-N/2, N/2)`.
    pub fn coefficient(&self, k: i64) -> Option<Complex> {
        let half = (self.sample_count() / 2) as i64;
        if k < -half || k >= half {
            return None;
        }
        Some(self.coefficients[(k + half) as usize])
    }

    pub fn indexed(&self) -> impl Iterator<Item = (i64, Complex)> + '_ {
        let half = (self.sample_count() / 2) as i64;
        self.coefficients
            .iter()
            .enumerate()
            .map(move |(i, c)| (i as i64 - half, *c))
    }
}

/// Sample `f` on `circle` at `n` points and compute its Fourier data.
pub fn analyze_circle<O: Oracle + ?Sized>(f: &O, circle: &Circle, n: usize) -> Result<FourierData> {
    FourierData::from_trace(&CircleTrace::sample(f, circle, n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtensionResult {
    pub passes: bool,
    pub negative_energy: f64,
    pub threshold_used: f64,
    pub aliasing_flag: bool,
}

/// Pass iff the negative-frequency energy and the high-band energy are both
/// at most `tol` times the total energy.
pub fn extension_test(data: &FourierData, tol: f64) -> ExtensionResult {
    let threshold = tol * (data.total_energy + ENERGY_FLOOR);
    let aliasing_flag = data.tail_energy_high > threshold;
    let negative_energy = data.tail_energy_negative;
    ExtensionResult {
        passes: negative_energy <= threshold && !aliasing_flag,
        negative_energy,
        threshold_used: threshold,
        aliasing_flag,
    }
}

/// Sample counts and threshold for the adaptive circle test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoreraOptions {
    pub samples: usize,
    pub max_samples: usize,
    pub tol: f64,
}

impl Default for MoreraOptions {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            max_samples: MAX_SAMPLES,
            tol: DEFAULT_MORERA_TOL,
        }
    }
}

/// Outcome of the adaptive test on a single circle.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleAnalysis {
    pub data: FourierData,
    pub result: ExtensionResult,
    /// The trace was still aliased at `max_samples`.
    pub inconclusive: bool,
}

impl CircleAnalysis {
    /// Run the test, doubling the sample count while the aliasing guard trips.
    pub fn run<O: Oracle + ?Sized>(f: &O, circle: &Circle, opts: &MoreraOptions) -> Result<Self> {
        if !(opts.tol > 0.0) {
            return Err(Error::Config(format!("Morera tolerance {} must be positive", opts.tol)));
        }
        let mut n = opts.samples;
        loop {
            let data = analyze_circle(f, circle, n)?;
            let result = extension_test(&data, opts.tol);
            if !result.aliasing_flag {
                return Ok(Self {
                    data,
                    result,
                    inconclusive: false,
                });
            }
            if n * 2 > opts.max_samples {
                return Ok(Self {
                    data,
                    result,
                    inconclusive: true,
                });
            }
            n *= 2;
        }
    }

    pub fn passes(&self) -> bool {
        self.result.passes
    }

    /// Like [`evaluate_extension`], but turns a failed test into the
    /// matching error.
    pub fn require_extension(&self) -> Result<()> {
        if self.inconclusive {
            return Err(Error::Inconclusive {
                circle: self.data.circle,
                samples: self.data.sample_count(),
            });
        }
        if !self.result.passes {
            return Err(Error::MoreraFailure {
                circle: self.data.circle,
                negative_energy: self.result.negative_energy,
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, zeta: Complex) -> Result<Complex> {
        evaluate_extension(self, zeta)
    }
}

/// Relative slack for points on the boundary circle itself.
const BOUNDARY_SLACK: f64 = 1e-12;

/// Evaluate `sum_{k >= 0} c_k ((zeta - a) / r)^k` at a point of the closed disc.
pub fn evaluate_extension(analysis: &CircleAnalysis, zeta: Complex) -> Result<Complex> {
    analysis.require_extension()?;
    evaluate_series(&analysis.data, zeta)
}

/// The nonnegative-index series without checking the test outcome.
pub(crate) fn evaluate_series(data: &FourierData, zeta: Complex) -> Result<Complex> {
    let circle = &data.circle;
    let u = (zeta - circle.center) / circle.radius;
    if !is_finite(u) || u.norm() > 1.0 + BOUNDARY_SLACK {
        return Err(Error::Domain {
            point: zeta,
            reason: format!("outside the closed disc of {circle}"),
        });
    }
    let half = data.sample_count() / 2;
    let positive = &data.coefficients[half..];
    Ok(positive
        .iter()
        .rev()
        .fold(Complex::new(0.0, 0.0), |acc, c| acc * u + c))
}
