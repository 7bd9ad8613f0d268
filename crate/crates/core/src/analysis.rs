//! Family sweeps and the overall verdict.
//!
//! A verdict combines three kinds of evidence:
//!
//! * the spectral extension test on a finite grid of circles from each
//!   family,
//! * agreement of the extensions from different circles near the real
//!   segment `(-1 + 2 tau, 0)`, where both families overlap, and
//! * an independent finite-difference estimate of `∂f/∂conj(z)` over the disc.
//!
//! "holomorphic-consistent" is finite evidence, not a proof.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{CircleAnalysis, MoreraOptions};
use crate::geometry::{Circle, Complex, PencilConfig};
use crate::oracle::Oracle;

pub const DEFAULT_GRID_SIZE: usize = 32;
pub const DEFAULT_MARGIN: f64 = 1e-3;
pub const DEFAULT_CROSS_TOL: f64 = 1e-6;
pub const DEFAULT_DBAR_TOL: f64 = 1e-4;
pub const DEFAULT_CROSS_POINTS: usize = 8;
pub const DEFAULT_PROBES: usize = 8;
/// Circles sampled per family in one cross-consistency check.
const CROSS_CIRCLES_PER_FAMILY: usize = 6;
/// Minimal gap between `T` and a circle used for cross-consistency.
const CROSS_MIN_SLACK: f64 = 0.02;
const CROSS_MAX_PROBE_RADIUS: f64 = 0.05;

/// `n` Chebyshev–Lobatto points on `[lo, hi]`, increasing. Grids of size
/// `n` are contained in grids of size `2n - 1`.
pub fn chebyshev_lobatto(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    (0..n)
        .map(|k| {
            if k == 0 {
                lo
            } else if k == n - 1 {
                hi
            } else {
                mid - half * (PI * k as f64 / (n - 1) as f64).cos()
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Centered,
    Pencil,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FamilySpec {
    /// Circles `|ζ| = R` with `r_min <= R <= 1`; `r_min = 0` means the
    /// whole family `0 < R <= 1`.
    Centered { r_min: f64 },
    /// Circles through `p` with radius at least `tau`.
    Pencil(PencilConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub spec: FamilySpec,
    pub grid_size: usize,
    /// Inset keeping grids away from `R = 0` and from the unit circle (`t = 0`).
    pub margin: f64,
}

impl FamilyConfig {
    pub fn centered(r_min: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&r_min) {
            return Err(Error::Config(format!("r_min = {r_min} must lie in [0, 1)")));
        }
        Ok(Self {
            spec: FamilySpec::Centered { r_min },
            grid_size: DEFAULT_GRID_SIZE,
            margin: DEFAULT_MARGIN,
        })
    }

    pub fn pencil(p: Complex, tau: f64) -> Result<Self> {
        Ok(Self {
            spec: FamilySpec::Pencil(PencilConfig::new(p, tau)?),
            grid_size: DEFAULT_GRID_SIZE,
            margin: DEFAULT_MARGIN,
        })
    }

    pub fn with_grid_size(mut self, n: usize) -> Self {
        self.grid_size = n;
        self
    }

    pub fn kind(&self) -> FamilyKind {
        match self.spec {
            FamilySpec::Centered { .. } => FamilyKind::Centered,
            FamilySpec::Pencil(_) => FamilyKind::Pencil,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_size < 2 {
            return Err(Error::Config(format!("grid size {} must be at least 2", self.grid_size)));
        }
        if !(self.margin >= 0.0 && self.margin < 0.1) {
            return Err(Error::Config(format!("margin {} must lie in [0, 0.1)", self.margin)));
        }
        let (lo, hi) = self.range();
        if !(lo < hi) {
            return Err(Error::Config(format!("empty parameter range [{lo}, {hi}]")));
        }
        Ok(())
    }

    /// Parameter range actually swept: `R` for centered, `t` for pencil.
    pub fn range(&self) -> (f64, f64) {
        match self.spec {
            FamilySpec::Centered { r_min } => (r_min.max(self.margin), 1.0),
            FamilySpec::Pencil(p) => (p.t_min(), -self.margin),
        }
    }

    pub fn parameters(&self) -> Vec<f64> {
        let (lo, hi) = self.range();
        chebyshev_lobatto(lo, hi, self.grid_size)
    }

    pub fn circle(&self, param: f64) -> Result<Circle> {
        match self.spec {
            FamilySpec::Centered { .. } => Circle::new(Complex::new(0.0, 0.0), param),
            FamilySpec::Pencil(p) => p.circle(param),
        }
    }

    /// The smallest circle of the family. For the whole centered family this
    /// is the degenerate radius-zero circle at the origin.
    pub fn smallest(&self) -> (Complex, f64) {
        match self.spec {
            FamilySpec::Centered { r_min } => (Complex::new(0.0, 0.0), r_min),
            FamilySpec::Pencil(p) => {
                let c = p.smallest();
                (c.center, c.radius)
            }
        }
    }
}

/// Whether the smallest circles of the two families bound disjoint closed
/// discs. For a whole centered family and a pencil this reduces to `tau < 1/2`.
pub fn validate_families(a: &FamilyConfig, b: &FamilyConfig) -> bool {
    // A centered disc of radius r and a pencil disc of radius rho centered at
    // distance 1 - rho from the origin: disjoint iff r < 1 - 2 rho. Evaluated
    // in closed form to avoid rounding |p (1 - rho)| on the boundary.
    match (a.spec, b.spec) {
        (FamilySpec::Centered { r_min }, FamilySpec::Pencil(p))
        | (FamilySpec::Pencil(p), FamilySpec::Centered { r_min }) => {
            return r_min < 1.0 - 2.0 * p.tau;
        }
        _ => {}
    }
    let (ca, ra) = a.smallest();
    let (cb, rb) = b.smallest();
    (ca - cb).norm() > ra + rb
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleReport {
    pub family: FamilyKind,
    pub parameter: f64,
    pub center: Complex,
    pub radius: f64,
    pub negative_energy: f64,
    pub total_energy: f64,
    pub threshold: f64,
    pub passes: bool,
    pub aliasing: bool,
    pub inconclusive: bool,
    pub samples: usize,
}

impl CircleReport {
    fn from_analysis(family: FamilyKind, parameter: f64, a: &CircleAnalysis) -> Self {
        Self {
            family,
            parameter,
            center: a.data.circle.center,
            radius: a.data.circle.radius,
            negative_energy: a.result.negative_energy,
            total_energy: a.data.total_energy,
            threshold: a.result.threshold_used,
            passes: a.result.passes,
            aliasing: a.result.aliasing_flag,
            inconclusive: a.inconclusive,
            samples: a.data.sample_count(),
        }
    }

    pub fn relative_negative_energy(&self) -> f64 {
        if self.total_energy > 0.0 {
            self.negative_energy / self.total_energy
        } else {
            0.0
        }
    }

    /// Failed with a trustworthy (non-aliased) spectrum.
    pub fn fails(&self) -> bool {
        !self.passes && !self.inconclusive
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub family: FamilyKind,
    pub config: FamilyConfig,
    pub circles: Vec<CircleReport>,
    pub passes: bool,
    pub inconclusive: bool,
    /// Index into `circles` of the failing circle with the largest relative
    /// negative energy.
    pub worst: Option<usize>,
}

impl FamilyReport {
    pub fn failing(&self) -> impl Iterator<Item = &CircleReport> {
        self.circles.iter().filter(|c| c.fails())
    }

    pub fn worst_circle(&self) -> Option<&CircleReport> {
        self.worst.map(|i| &self.circles[i])
    }
}

/// Run the extension test on every grid circle of the family.
pub fn test_family<O: Oracle + ?Sized>(
    f: &O,
    config: &FamilyConfig,
    opts: &MoreraOptions,
) -> Result<FamilyReport> {
    config.validate()?;
    let family = config.kind();
    let circles = config
        .parameters()
        .into_par_iter()
        .map(|param| {
            let circle = config.circle(param)?;
            let a = CircleAnalysis::run(f, &circle, opts)?;
            Ok(CircleReport::from_analysis(family, param, &a))
        })
        .collect::<Result<Vec<_>>>()?;
    let worst = circles
        .iter()
        .enumerate()
        .filter(|(_, c)| c.fails())
        .max_by(|a, b| {
            a.1.relative_negative_energy()
                .total_cmp(&b.1.relative_negative_energy())
        })
        .map(|(i, _)| i);
    let inconclusive = circles.iter().any(|c| c.inconclusive && !c.passes);
    Ok(FamilyReport {
        family,
        config: *config,
        passes: circles.iter().all(|c| c.passes),
        inconclusive,
        worst,
        circles,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossConsistency {
    /// The real point, in the normalized frame of the pencil.
    pub t: f64,
    pub residual: f64,
    pub circles: usize,
    pub probe_radius: f64,
}

fn pick_evenly<T: Copy>(items: &[T], k: usize) -> Vec<T> {
    if items.len() <= k {
        return items.to_vec();
    }
    (0..k)
        .map(|i| items[i * (items.len() - 1) / (k - 1).max(1)])
        .collect()
}

/// Largest disagreement, at probe points around the real point `t_point`,
/// between the extensions from circles of both families that surround it.
pub fn cross_consistency<O: Oracle + ?Sized>(
    f: &O,
    centered: &FamilyConfig,
    pencil: &FamilyConfig,
    t_point: f64,
    probe_count: usize,
    opts: &MoreraOptions,
) -> Result<CrossConsistency> {
    let FamilySpec::Pencil(pc) = pencil.spec else {
        return Err(Error::Config("cross-consistency needs a pencil family".into()));
    };
    if centered.kind() != FamilyKind::Centered {
        return Err(Error::Config("cross-consistency needs a centered family".into()));
    }
    if probe_count == 0 {
        return Err(Error::Config("probe count must be positive".into()));
    }
    let lo = -1.0 + 2.0 * pc.tau;
    if !(t_point > lo && t_point < 0.0) {
        return Err(Error::ParameterDomain {
            name: "T",
            value: t_point,
            lo,
            hi: 0.0,
        });
    }
    let point = pc.to_user(Complex::new(t_point, 0.0));
    let slack = |c: &Circle| c.radius - (point - c.center).norm();

    let mut chosen = Vec::new();
    for fam in [centered, pencil] {
        let surrounding: Vec<Circle> = fam
            .parameters()
            .into_iter()
            .map(|p| fam.circle(p))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|c| slack(c) > CROSS_MIN_SLACK)
            .collect();
        if surrounding.is_empty() {
            return Err(Error::Config(format!(
                "no {:?} circle surrounds T = {t_point}",
                fam.kind()
            )));
        }
        chosen.extend(pick_evenly(&surrounding, CROSS_CIRCLES_PER_FAMILY));
    }

    let analyses = chosen
        .par_iter()
        .map(|c| {
            let a = CircleAnalysis::run(f, c, opts)?;
            a.require_extension()?;
            Ok(a)
        })
        .collect::<Result<Vec<_>>>()?;

    let min_slack = chosen.iter().map(slack).fold(f64::INFINITY, f64::min);
    let probe_radius = (0.5 * min_slack).min(CROSS_MAX_PROBE_RADIUS);
    let mut residual: f64 = 0.0;
    for k in 0..probe_count {
        let angle = 2.0 * PI * (k as f64 + 0.5) / probe_count as f64;
        let probe = point + Complex::from_polar(probe_radius, angle);
        let values = analyses
            .iter()
            .map(|a| a.evaluate(probe))
            .collect::<Result<Vec<_>>>()?;
        for (i, u) in values.iter().enumerate() {
            for v in &values[i + 1..] {
                residual = residual.max((u - v).norm());
            }
        }
    }
    Ok(CrossConsistency {
        t: t_point,
        residual,
        circles: chosen.len(),
        probe_radius,
    })
}

/// Points `T` used for cross-consistency: midpoints of `count` equal cells of
/// `(-1 + 2 tau, 0)`. Empty when `tau >= 1/2`.
pub fn cross_points(tau: f64, count: usize) -> Vec<f64> {
    let lo = -1.0 + 2.0 * tau;
    if lo >= 0.0 {
        return Vec::new();
    }
    (0..count)
        .map(|k| lo - lo * (k as f64 + 0.5) / count as f64)
        .collect()
}

/// Polar grid for the ∂̄ oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DbarGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
    pub h: f64,
}

impl Default for DbarGrid {
    fn default() -> Self {
        Self {
            r_min: 0.2,
            r_max: 0.8,
            n_r: 7,
            n_theta: 16,
            h: 1e-3,
        }
    }
}

impl DbarGrid {
    pub fn points(&self) -> Vec<Complex> {
        let mut out = Vec::with_capacity(self.n_r * self.n_theta);
        for i in 0..self.n_r {
            let r = if self.n_r == 1 {
                self.r_min
            } else {
                self.r_min + (self.r_max - self.r_min) * i as f64 / (self.n_r - 1) as f64
            };
            for j in 0..self.n_theta {
                let theta = 2.0 * PI * (j as f64 + 0.5) / self.n_theta as f64;
                out.push(Complex::from_polar(r, theta));
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if !(self.h > 0.0) || self.n_r == 0 || self.n_theta == 0 {
            return Err(Error::Config("dbar grid needs h > 0 and nonempty axes".into()));
        }
        if !(self.r_min >= 0.0 && self.r_min <= self.r_max) {
            return Err(Error::Config("dbar grid needs 0 <= r_min <= r_max".into()));
        }
        if self.r_max + self.h >= 1.0 {
            return Err(Error::Domain {
                point: Complex::new(self.r_max + self.h, 0.0),
                reason: "dbar stencil touches the unit circle".into(),
            });
        }
        Ok(())
    }
}

/// Central-difference Wirtinger derivative `(f_x + i f_y) / 2` with step `h`.
fn dbar_central<O: Oracle + ?Sized>(f: &O, z: Complex, h: f64) -> Result<Complex> {
    let dx = (f.eval(z + h)? - f.eval(z - h)?) / (2.0 * h);
    let ih = Complex::new(0.0, h);
    let dy = (f.eval(z + ih)? - f.eval(z - ih)?) / (2.0 * h);
    Ok((dx + Complex::i() * dy) * 0.5)
}

/// Richardson-extrapolated ∂̄ estimate at one point.
pub fn dbar_at<O: Oracle + ?Sized>(f: &O, z: Complex, h: f64) -> Result<Complex> {
    let coarse = dbar_central(f, z, h)?;
    let fine = dbar_central(f, z, 0.5 * h)?;
    Ok((fine * 4.0 - coarse) / 3.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DbarReport {
    pub residual: f64,
    pub at: Complex,
    pub points: usize,
}

/// Supremum over the grid of `|∂f/∂conj(z)|`.
pub fn dbar_residual<O: Oracle + ?Sized>(f: &O, grid: &DbarGrid) -> Result<DbarReport> {
    grid.validate()?;
    let points = grid.points();
    let values = points
        .par_iter()
        .map(|&z| Ok((z, dbar_at(f, z, grid.h)?.norm())))
        .collect::<Result<Vec<_>>>()?;
    let (at, residual) = values
        .iter()
        .copied()
        .fold((Complex::new(0.0, 0.0), 0.0), |acc, v| if v.1 > acc.1 { v } else { acc });
    Ok(DbarReport {
        residual,
        at,
        points: points.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub morera: f64,
    pub cross: f64,
    pub dbar: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            morera: crate::extension::DEFAULT_MORERA_TOL,
            cross: DEFAULT_CROSS_TOL,
            dbar: DEFAULT_DBAR_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremConfig {
    pub families: Vec<FamilyConfig>,
    pub tolerances: Tolerances,
    pub samples: usize,
    pub max_samples: usize,
    pub cross_points: usize,
    pub probes: usize,
    pub dbar_grid: DbarGrid,
}

impl TheoremConfig {
    fn with_families(families: Vec<FamilyConfig>) -> Self {
        Self {
            families,
            tolerances: Tolerances::default(),
            samples: crate::extension::DEFAULT_SAMPLES,
            max_samples: crate::extension::MAX_SAMPLES,
            cross_points: DEFAULT_CROSS_POINTS,
            probes: DEFAULT_PROBES,
            dbar_grid: DbarGrid::default(),
        }
    }

    /// All centered circles and the pencil through `p` with radius floor `tau`.
    pub fn main_theorem(p: Complex, tau: f64) -> Result<Self> {
        Ok(Self::with_families(vec![
            FamilyConfig::centered(0.0)?,
            FamilyConfig::pencil(p, tau)?,
        ]))
    }

    /// Centered circles with `R >= r` and the pencil through `p` with `R >= rho`.
    pub fn centered_and_pencil(p: Complex, r: f64, rho: f64) -> Result<Self> {
        Ok(Self::with_families(vec![
            FamilyConfig::centered(r)?,
            FamilyConfig::pencil(p, rho)?,
        ]))
    }

    /// Pencils through two distinct boundary points.
    pub fn two_pencils(p1: Complex, rho1: f64, p2: Complex, rho2: f64) -> Result<Self> {
        if (p1 - p2).norm() < 1e-12 {
            return Err(Error::Config("the two boundary points must differ".into()));
        }
        Ok(Self::with_families(vec![
            FamilyConfig::pencil(p1, rho1)?,
            FamilyConfig::pencil(p2, rho2)?,
        ]))
    }

    pub fn with_grid_size(mut self, n: usize) -> Self {
        for f in &mut self.families {
            f.grid_size = n;
        }
        self
    }

    pub fn morera_options(&self) -> MoreraOptions {
        MoreraOptions {
            samples: self.samples,
            max_samples: self.max_samples,
            tol: self.tolerances.morera,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.families.len() != 2 {
            return Err(Error::Config("a theorem configuration has exactly two families".into()));
        }
        for f in &self.families {
            f.validate()?;
        }
        let t = &self.tolerances;
        if !(t.morera > 0.0 && t.cross > 0.0 && t.dbar > 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if self.samples < crate::extension::MIN_SAMPLES
            || !self.samples.is_power_of_two()
            || self.max_samples < self.samples
        {
            return Err(Error::Config(format!(
                "sample counts {} / {} must be powers of two >= 8 with max >= initial",
                self.samples, self.max_samples
            )));
        }
        Ok(())
    }

    /// Whether the smallest circles of the two families are disjoint.
    pub fn hypotheses_hold(&self) -> bool {
        validate_families(&self.families[0], &self.families[1])
    }

    fn centered_pencil_pair(&self) -> Option<(&FamilyConfig, &FamilyConfig)> {
        let c = self.families.iter().find(|f| f.kind() == FamilyKind::Centered)?;
        let p = self.families.iter().find(|f| f.kind() == FamilyKind::Pencil)?;
        Some((c, p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    HolomorphicConsistent,
    MoreraFailure,
    Inconsistent,
    Inconclusive,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::HolomorphicConsistent => "holomorphic-consistent",
            Classification::MoreraFailure => "morera-failure",
            Classification::Inconsistent => "inconsistent",
            Classification::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossSummary {
    pub checks: Vec<CrossConsistency>,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub verdict: Classification,
    pub hypotheses_hold: bool,
    pub families: Vec<FamilyReport>,
    /// `None` when not applicable (two pencils, or no real segment because
    /// the pencil floor is at least 1/2) or when a family test failed.
    pub cross_consistency: Option<CrossSummary>,
    pub dbar: DbarReport,
    /// Which parts of the pipeline ran.
    pub coverage: String,
}

impl Verdict {
    pub fn failing_circles(&self) -> impl Iterator<Item = &CircleReport> {
        self.families.iter().flat_map(|f| f.failing())
    }

    /// Failing circle with the largest relative negative energy.
    pub fn worst_failure(&self) -> Option<&CircleReport> {
        self.families
            .iter()
            .filter_map(|f| f.worst_circle())
            .max_by(|a, b| {
                a.relative_negative_energy()
                    .total_cmp(&b.relative_negative_energy())
            })
    }
}

/// Run the full pipeline.
pub fn verdict<O: Oracle + ?Sized>(f: &O, config: &TheoremConfig) -> Result<Verdict> {
    config.validate()?;
    let opts = config.morera_options();
    let families = config
        .families
        .iter()
        .map(|fam| test_family(f, fam, &opts))
        .collect::<Result<Vec<_>>>()?;
    let dbar = dbar_residual(f, &config.dbar_grid)?;

    let any_fail = families.iter().any(|r| r.failing().next().is_some());
    let any_inconclusive = families.iter().any(|r| r.inconclusive);
    let all_pass = families.iter().all(|r| r.passes);

    let pair = config.centered_pencil_pair();
    let mut coverage = match pair {
        Some(_) => "sweeps, cross-consistency, dbar".to_string(),
        None => "partial: sweeps and dbar only (two pencils)".to_string(),
    };
    let mut cross = None;
    if all_pass {
        if let Some((c, p)) = pair {
            let FamilySpec::Pencil(pc) = p.spec else { unreachable!() };
            let points = cross_points(pc.tau, config.cross_points);
            if points.is_empty() {
                coverage = "sweeps and dbar (pencil floor >= 1/2: no real segment)".to_string();
            } else {
                let checks = points
                    .iter()
                    .map(|&t| cross_consistency(f, c, p, t, config.probes, &opts))
                    .collect::<Result<Vec<_>>>()?;
                let residual = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
                cross = Some(CrossSummary { checks, residual });
            }
        }
    }

    let verdict = if any_fail {
        Classification::MoreraFailure
    } else if any_inconclusive || !all_pass {
        Classification::Inconclusive
    } else {
        let cross_ok = cross
            .as_ref()
            .is_none_or(|c| c.residual < config.tolerances.cross);
        if cross_ok && dbar.residual < config.tolerances.dbar {
            Classification::HolomorphicConsistent
        } else {
            Classification::Inconsistent
        }
    };

    Ok(Verdict {
        verdict,
        hypotheses_hold: config.hypotheses_hold(),
        families,
        cross_consistency: cross,
        dbar,
        coverage,
    })
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Serializable record of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub function: String,
    pub config: TheoremConfig,
    pub verdict: Classification,
    pub hypotheses_hold: bool,
    pub details: Verdict,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(function: impl Into<String>, config: &TheoremConfig, details: Verdict) -> Self {
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            function: function.into(),
            config: config.clone(),
            verdict: details.verdict,
            hypotheses_hold: details.hypotheses_hold,
            details,
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
