//! Fiber curves `M_z` over non-real base points, the regions `D_z` they bound,
//! the fiberwise function `F(z, ·)` assembled from circle extensions, and the
//! contour integrals over `M_z`.
//!
//! Everything here lives in the normalized frame where the pencil passes
//! through `-1`. For `z` in the admissible region, `M_z` is the union of
//!
//! * the segment `{R^2 / z : |z| <= R <= 1}` from `conj(z)` to `1/z`, the
//!   fibers of the centered family, and
//! * the arc `λ_z` of the tangent circle `C_z`, the fibers of the pencil
//!   members `t(z) <= t <= 0`.
//!
//! The stored traversal runs along the arc from `conj(z)` to `1/z` and back
//! along the segment. Its orientation relative to `D_z` is recorded as a
//! sign, and integrals are reported for the positively oriented curve.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{CircleAnalysis, MoreraOptions};
use crate::geometry::{arc_lambda, pencil_circle, pencil_param, Arc, Circle, Complex, EPS_GEOM};
use crate::oracle::Oracle;
use crate::quadrature::composite_with_nodes;
use crate::semiquadric::invert_pencil_fiber;

pub const DEFAULT_NODES_PER_PIECE: usize = 256;
pub const MAX_NODES_PER_PIECE: usize = 8192;
/// Successive refinements closer than this are accepted.
pub const REFINE_TOL: f64 = 1e-8;
/// Curve-proximity guard, relative to the curve diameter.
pub const EPS_CURVE_REL: f64 = 1e-6;
/// Tolerance on `|Im(w z)|` when recovering `R` on the segment.
const SEGMENT_IM_TOL: f64 = 1e-9;

/// Whether `z` lies in `S = Δ ∖ (closed Δ(-1+τ, τ) ∪ [0, 1])`.
pub fn in_admissible_region(z: Complex, tau: f64) -> bool {
    if !(z.norm() < 1.0) {
        return false;
    }
    if z.im == 0.0 && z.re >= 0.0 {
        return false;
    }
    (z - Complex::new(-1.0 + tau, 0.0)).norm() > tau
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Piece {
    Arc,
    Segment,
}

impl Piece {
    pub fn name(self) -> &'static str {
        match self {
            Piece::Arc => "arc",
            Piece::Segment => "segment",
        }
    }
}

/// A quadrature node on the traversal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub piece: Piece,
    /// Angle on `C_z` for arc nodes, radius `R` for segment nodes.
    pub param: f64,
    pub w: Complex,
    /// `dw` weight along the stored traversal.
    pub dw: Complex,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiberCurve {
    pub z: Complex,
    pub tau: f64,
    /// `(conj(z), 1/z)`.
    pub segment: (Complex, Complex),
    pub arc: Arc,
    pub nodes: Vec<Node>,
    pub nodes_per_piece: usize,
    /// `+1` if the stored traversal winds positively around `D_z`.
    pub orientation: f64,
}

/// Build `M_z` with `nodes_per_piece` Gauss–Legendre nodes on each piece.
pub fn fiber_curve(z: Complex, tau: f64, nodes_per_piece: usize) -> Result<FiberCurve> {
    if z.im.abs() < EPS_GEOM {
        return Err(Error::Degenerate(format!(
            "z = {z} is real: its fiber is the extended real line"
        )));
    }
    if !in_admissible_region(z, tau) {
        return Err(Error::Domain {
            point: z,
            reason: format!("outside the admissible region for tau = {tau}"),
        });
    }
    if nodes_per_piece == 0 {
        return Err(Error::Invalid("nodes_per_piece must be positive".into()));
    }
    let arc = arc_lambda(z)?;
    let sweep = arc.sweep();
    let dir = arc.direction.sign();
    let mut nodes = Vec::with_capacity(2 * nodes_per_piece);

    for (s, ws) in composite_with_nodes(0.0, 1.0, nodes_per_piece) {
        let theta = arc.angle_at(s);
        let e = Complex::from_polar(arc.circle.radius, theta);
        nodes.push(Node {
            piece: Piece::Arc,
            param: theta,
            w: arc.circle.center + e,
            dw: Complex::i() * e * (dir * sweep * ws),
        });
    }
    let r0 = z.norm();
    let zi = z.inv();
    for (r, wr) in composite_with_nodes(r0, 1.0, nodes_per_piece).into_iter().rev() {
        // Traversed from R = 1 down to R = |z|.
        nodes.push(Node {
            piece: Piece::Segment,
            param: r,
            w: zi * (r * r),
            dw: -zi * (2.0 * r * wr),
        });
    }

    let area2: f64 = nodes.iter().map(|n| (n.w.conj() * n.dw).im).sum();
    let orientation = if area2 >= 0.0 { 1.0 } else { -1.0 };
    Ok(FiberCurve {
        z,
        tau,
        segment: (z.conj(), zi),
        arc,
        nodes,
        nodes_per_piece,
        orientation,
    })
}

impl FiberCurve {
    pub fn distance_to(&self, w: Complex) -> f64 {
        self.arc.distance_to(w).min(segment_distance(self.segment.0, self.segment.1, w))
    }

    /// Diameter of the closed region `D_z` (a circular segment).
    pub fn diameter(&self) -> f64 {
        if self.arc.sweep() <= PI {
            (self.segment.1 - self.segment.0).norm()
        } else {
            2.0 * self.arc.circle.radius
        }
    }

    pub fn eps_curve(&self) -> f64 {
        EPS_CURVE_REL * self.diameter()
    }

    fn guard(&self, w: Complex) -> Result<()> {
        let d = self.distance_to(w);
        if d < self.eps_curve() {
            return Err(Error::NearCurve { point: w, distance: d });
        }
        Ok(())
    }

    /// Winding number of the positively oriented `M_z` about `w`.
    pub fn winding_number(&self, w: Complex) -> Result<i32> {
        self.guard(w)?;
        let total = arc_arg_change(&self.arc, w, 0.0, 1.0, 0)
            + arg_change(self.segment.1, self.segment.0, w);
        Ok((self.orientation * total / (2.0 * PI)).round() as i32)
    }

    /// Polyline samples of each piece for plotting, endpoints included.
    pub fn polyline(&self, points_per_piece: usize) -> Vec<(Piece, usize, f64, Complex)> {
        let n = points_per_piece.max(2);
        let mut out = Vec::with_capacity(2 * n);
        for k in 0..n {
            let s = k as f64 / (n - 1) as f64;
            out.push((Piece::Arc, k, self.arc.angle_at(s), self.arc.point(s)));
        }
        let r0 = self.z.norm();
        for k in 0..n {
            let r = 1.0 - (1.0 - r0) * k as f64 / (n - 1) as f64;
            out.push((Piece::Segment, k, r, self.segment.1 * (r * r)));
        }
        out
    }
}

/// Whether `w` lies in `D_z`: the winding number of `M_z` about `w` is `±1`.
pub fn region_contains(curve: &FiberCurve, w: Complex) -> Result<bool> {
    Ok(curve.winding_number(w)?.abs() == 1)
}

fn segment_distance(a: Complex, b: Complex, w: Complex) -> f64 {
    let d = b - a;
    let s = ((w - a) * d.conj()).re / d.norm_sqr();
    let s = s.clamp(0.0, 1.0);
    (a + d * s - w).norm()
}

/// Continuous change of `arg(· - w)` along the straight segment `a -> b`.
fn arg_change(a: Complex, b: Complex, w: Complex) -> f64 {
    ((b - w) / (a - w)).arg()
}

/// Continuous change of `arg(· - w)` along the arc between fractions `s0` and
/// `s1`. A sub-arc of length at most half the distance from its start to `w`
/// subtends less than `pi / 3`, so the principal argument is exact there.
fn arc_arg_change(arc: &Arc, w: Complex, s0: f64, s1: f64, depth: u32) -> f64 {
    let p0 = arc.point(s0);
    let p1 = arc.point(s1);
    let len = arc.length() * (s1 - s0);
    if depth >= 64 || len <= 0.5 * (p0 - w).norm().min((p1 - w).norm()) {
        return arg_change(p0, p1, w);
    }
    let mid = 0.5 * (s0 + s1);
    arc_arg_change(arc, w, s0, mid, depth + 1) + arc_arg_change(arc, w, mid, s1, depth + 1)
}

/// Parameters for assembling `F` on a fiber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiberOptions {
    pub tau: f64,
    pub nodes_per_piece: usize,
    pub morera: MoreraOptions,
}

impl FiberOptions {
    pub fn new(tau: f64) -> Self {
        Self {
            tau,
            nodes_per_piece: DEFAULT_NODES_PER_PIECE,
            morera: MoreraOptions::default(),
        }
    }
}

/// Which circle owns the fiber point `w` over `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FiberOwner {
    /// `|ζ| = R`.
    Centered(f64),
    /// `|ζ - t| = t + 1`.
    Pencil(f64),
}

impl FiberOwner {
    pub fn circle(self) -> Result<Circle> {
        match self {
            FiberOwner::Centered(r) => Circle::new(Complex::new(0.0, 0.0), r),
            FiberOwner::Pencil(t) => pencil_circle(t),
        }
    }
}

/// Identify the circle whose semiquadric passes through `(z, w)`.
pub fn fiber_owner(curve: &FiberCurve, w: Complex) -> Result<FiberOwner> {
    let z = curve.z;
    let eps = curve.eps_curve();
    let s = w * z;
    let r0 = z.norm();
    if segment_distance(curve.segment.0, curve.segment.1, w) <= eps {
        if s.im.abs() >= SEGMENT_IM_TOL.max(eps * r0) {
            return Err(Error::Domain {
                point: w,
                reason: format!("|Im(w z)| = {:.3e} too large on the segment", s.im.abs()),
            });
        }
        let r = s.re.max(0.0).sqrt().clamp(r0, 1.0);
        return Ok(FiberOwner::Centered(r));
    }
    if curve.arc.distance_to(w) <= eps {
        let t_lo = pencil_param(z)?;
        let t = invert_pencil_fiber(z, w)?.clamp(t_lo, 0.0);
        return Ok(FiberOwner::Pencil(t));
    }
    Err(Error::Domain {
        point: w,
        reason: format!("not on the fiber curve over z = {z}"),
    })
}

fn extension_at<O: Oracle + ?Sized>(
    f: &O,
    owner: FiberOwner,
    z: Complex,
    opts: &MoreraOptions,
) -> Result<Complex> {
    let circle = owner.circle()?;
    let analysis = CircleAnalysis::run(f, &circle, opts)?;
    analysis.evaluate(z)
}

/// `F(z, w)`: the holomorphic extension of `f` from the circle owning `w`,
/// evaluated at `z`.
#[allow(non_snake_case)]
pub fn eval_F<O: Oracle + ?Sized>(f: &O, z: Complex, w: Complex, opts: &FiberOptions) -> Result<Complex> {
    let curve = fiber_curve(z, opts.tau, 1)?;
    let owner = fiber_owner(&curve, w)?;
    extension_at(f, owner, z, &opts.morera)
}

/// `F(z, ·)` sampled at the quadrature nodes of `M_z`.
#[derive(Debug, Clone)]
pub struct FiberField {
    pub curve: FiberCurve,
    pub values: Vec<Complex>,
}

impl FiberField {
    pub fn new<O: Oracle + ?Sized>(f: &O, z: Complex, opts: &FiberOptions) -> Result<Self> {
        let curve = fiber_curve(z, opts.tau, opts.nodes_per_piece)?;
        let t_lo = pencil_param(z)?;
        let values = curve
            .nodes
            .par_iter()
            .map(|node| {
                let owner = match node.piece {
                    Piece::Segment => FiberOwner::Centered(node.param),
                    Piece::Arc => {
                        FiberOwner::Pencil(invert_pencil_fiber(z, node.w)?.clamp(t_lo, 0.0))
                    }
                };
                extension_at(f, owner, z, &opts.morera)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { curve, values })
    }

    /// `(1 / 2 pi i) ∮ F(z, w) / (w - W) dw` over the positively oriented curve.
    pub fn theta(&self, big_w: Complex) -> Result<Complex> {
        self.curve.guard(big_w)?;
        let sum: Complex = self
            .curve
            .nodes
            .iter()
            .zip(&self.values)
            .map(|(n, v)| v * n.dw / (n.w - big_w))
            .sum();
        Ok(sum * self.curve.orientation / Complex::new(0.0, 2.0 * PI))
    }

    /// `∮ F(z, w) dw` over the positively oriented curve.
    pub fn integral(&self) -> Complex {
        let sum: Complex = self
            .curve
            .nodes
            .iter()
            .zip(&self.values)
            .map(|(n, v)| v * n.dw)
            .sum();
        sum * self.curve.orientation
    }

    /// Largest spread of `F(z, ·)` over the nodes.
    pub fn spread(&self) -> f64 {
        let Some(first) = self.values.first() else {
            return 0.0;
        };
        let (mut lo_re, mut hi_re, mut lo_im, mut hi_im) = (first.re, first.re, first.im, first.im);
        for v in &self.values {
            lo_re = lo_re.min(v.re);
            hi_re = hi_re.max(v.re);
            lo_im = lo_im.min(v.im);
            hi_im = hi_im.max(v.im);
        }
        (hi_re - lo_re).hypot(hi_im - lo_im)
    }
}

/// Θ(z, W) with the node count fixed by `opts`.
pub fn cauchy_transform<O: Oracle + ?Sized>(
    f: &O,
    z: Complex,
    big_w: Complex,
    opts: &FiberOptions,
) -> Result<Complex> {
    let curve = fiber_curve(z, opts.tau, 1)?;
    curve.guard(big_w)?;
    FiberField::new(f, z, opts)?.theta(big_w)
}

/// Evaluate `measure` on fields with doubling node counts until two
/// successive values agree to [`REFINE_TOL`].
pub fn refine<O, M>(f: &O, z: Complex, opts: &FiberOptions, measure: M) -> Result<(Complex, usize)>
where
    O: Oracle + ?Sized,
    M: Fn(&FiberField) -> Result<Complex>,
{
    let mut o = *opts;
    let mut prev = measure(&FiberField::new(f, z, &o)?)?;
    loop {
        if o.nodes_per_piece * 2 > MAX_NODES_PER_PIECE {
            return Err(Error::NoConvergence {
                difference: f64::NAN,
                nodes: o.nodes_per_piece,
            });
        }
        o.nodes_per_piece *= 2;
        let next = measure(&FiberField::new(f, z, &o)?)?;
        let diff = (next - prev).norm();
        if diff < REFINE_TOL {
            return Ok((next, o.nodes_per_piece));
        }
        if o.nodes_per_piece * 2 > MAX_NODES_PER_PIECE {
            return Err(Error::NoConvergence {
                difference: diff,
                nodes: o.nodes_per_piece,
            });
        }
        prev = next;
    }
}

/// `∮_{M_z} F(z, w) dw`, refined until stable.
pub fn fiber_integral<O: Oracle + ?Sized>(f: &O, z: Complex, opts: &FiberOptions) -> Result<Complex> {
    refine(f, z, opts, |field| Ok(field.integral())).map(|(v, _)| v)
}
