//! Circles in the closed unit disc, the pencil of circles internally tangent
//! at a boundary point, and the tangent circles `C_z` that carry the arc part
//! of the fiber curves.
//!
//! Pencil computations are carried out in a normalized frame where the
//! boundary point is `-1`; [`PencilConfig`] stores the rotation back to the
//! caller's frame.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Inputs with `|Im z|` below this are treated as lying on the real axis.
pub const EPS_GEOM: f64 = 1e-9;

/// Tolerance for `|p| = 1` on pencil boundary points.
const UNIT_TOL: f64 = 1e-12;

pub fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Reduce an angle to `(-pi, pi]`.
pub fn canonical_angle(theta: f64) -> f64 {
    let mut a = theta.rem_euclid(2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Complex,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Complex, radius: f64) -> Result<Self> {
        if !is_finite(center) {
            return Err(Error::Invalid(format!("circle center {center} is not finite")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Invalid(format!("circle radius {radius} must be positive")));
        }
        Ok(Self { center, radius })
    }

    /// The point at angle `theta` measured from the center.
    pub fn point_at(&self, theta: f64) -> Complex {
        self.center + Complex::from_polar(self.radius, theta)
    }

    /// Angle of `z` as seen from the center, in `(-pi, pi]`.
    pub fn angle_of(&self, z: Complex) -> f64 {
        (z - self.center).arg()
    }

    /// Signed distance from `z` to the circle (negative inside).
    pub fn signed_distance(&self, z: Complex) -> f64 {
        (z - self.center).norm() - self.radius
    }

    pub fn contains_closed(&self, z: Complex, slack: f64) -> bool {
        self.signed_distance(z) <= slack
    }
}

impl fmt::Display for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(center {}{:+}i, radius {})",
            self.center.re, self.center.im, self.radius
        )
    }
}

/// True iff the closed disc of `inner` lies in the open disc of `outer`.
///
/// Strict: a circle never surrounds itself, and internally tangent circles
/// do not surround each other. Pencil members are ordered separately by
/// [`pencil_nested`].
pub fn surrounds(inner: &Circle, outer: &Circle) -> bool {
    (inner.center - outer.center).norm() + inner.radius < outer.radius
}

/// Pencil circles all touch at the boundary point; they are declared nested
/// in the order of their parameter.
pub fn pencil_nested(t_inner: f64, t_outer: f64) -> bool {
    t_inner < t_outer
}

/// Pencil member `bΔ(t, t+1)` in the normalized frame (boundary point `-1`).
/// Accepts any `t` in `(-1, 0]`; family floors are enforced by [`PencilConfig`].
pub fn pencil_circle(t: f64) -> Result<Circle> {
    if !(t > -1.0 && t <= 0.0) {
        return Err(Error::ParameterDomain {
            name: "t",
            value: t,
            lo: -1.0,
            hi: 0.0,
        });
    }
    Circle::new(Complex::new(t, 0.0), t + 1.0)
}

/// The pencil parameter of the member passing through `z`:
/// `t(z) = (|z|^2 - 1) / (2 (Re z + 1))`.
pub fn pencil_param(z: Complex) -> Result<f64> {
    if !is_finite(z) {
        return Err(Error::Invalid(format!("non-finite point {z}")));
    }
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::Domain {
            point: z,
            reason: "outside the closed unit disc".into(),
        });
    }
    let denom = 2.0 * (z.re + 1.0);
    if denom.abs() <= 1e-15 {
        return Err(Error::Degenerate(
            "z = -1 lies on every pencil circle".into(),
        ));
    }
    Ok((z.norm_sqr() - 1.0) / denom)
}

/// The circle `C_z` through `conj(z)`, `1/z` and `-1`. It is tangent to the
/// real axis at `-1`, with center `-1 - i|z+1|^2 / (2 Im z)`.
pub fn tangent_circle(z: Complex) -> Result<Circle> {
    if !is_finite(z) {
        return Err(Error::Invalid(format!("non-finite point {z}")));
    }
    if z.im.abs() < EPS_GEOM {
        return Err(Error::Degenerate(format!(
            "Im z = {} is (numerically) zero; the fiber over a real point is the extended real line",
            z.im
        )));
    }
    let q = (z + 1.0).norm_sqr();
    let center = Complex::new(-1.0, -q / (2.0 * z.im));
    Circle::new(center, q / (2.0 * z.im.abs()))
}

/// Traversal direction of an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    CounterClockwise,
    Clockwise,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::CounterClockwise => 1.0,
            Direction::Clockwise => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub circle: Circle,
    /// Start angle in `(-pi, pi]`.
    pub angle_start: f64,
    /// End angle in `(-pi, pi]`.
    pub angle_end: f64,
    pub direction: Direction,
}

impl Arc {
    /// Unsigned angular extent in `[0, 2 pi)`.
    pub fn sweep(&self) -> f64 {
        let d = match self.direction {
            Direction::CounterClockwise => self.angle_end - self.angle_start,
            Direction::Clockwise => self.angle_start - self.angle_end,
        };
        d.rem_euclid(2.0 * PI)
    }

    pub fn length(&self) -> f64 {
        self.circle.radius * self.sweep()
    }

    /// Angle reached after travelling fraction `s` of the arc.
    pub fn angle_at(&self, s: f64) -> f64 {
        self.angle_start + self.direction.sign() * s * self.sweep()
    }

    pub fn point(&self, s: f64) -> Complex {
        self.circle.point_at(self.angle_at(s))
    }

    pub fn start(&self) -> Complex {
        self.circle.point_at(self.angle_start)
    }

    pub fn end(&self) -> Complex {
        self.circle.point_at(self.angle_end)
    }

    /// Whether the ray from the center at angle `theta` meets the arc.
    pub fn contains_angle(&self, theta: f64) -> bool {
        let offset = match self.direction {
            Direction::CounterClockwise => theta - self.angle_start,
            Direction::Clockwise => self.angle_start - theta,
        };
        offset.rem_euclid(2.0 * PI) <= self.sweep()
    }

    /// Euclidean distance from `w` to the arc.
    pub fn distance_to(&self, w: Complex) -> f64 {
        let rel = w - self.circle.center;
        let to_ends = (w - self.start()).norm().min((w - self.end()).norm());
        if rel.norm() == 0.0 {
            return self.circle.radius;
        }
        if self.contains_angle(rel.arg()) {
            (rel.norm() - self.circle.radius).abs()
        } else {
            to_ends
        }
    }
}

/// The arc `λ_z` of [`tangent_circle`] from `conj(z)` to `1/z` that avoids `-1`.
pub fn arc_lambda(z: Complex) -> Result<Arc> {
    let circle = tangent_circle(z)?;
    if z.norm() >= 1.0 {
        return Err(Error::Degenerate(format!(
            "|z| = {} >= 1: the arc endpoints conj(z) and 1/z coincide or swap",
            z.norm()
        )));
    }
    let from = z.conj();
    let to = z.inv();
    if (from - to).norm() <= 1e-15 * circle.radius.max(1.0) {
        return Err(Error::Degenerate("arc endpoints coincide".into()));
    }
    let angle_start = canonical_angle(circle.angle_of(from));
    let angle_end = canonical_angle(circle.angle_of(to));
    let excluded = circle.angle_of(Complex::new(-1.0, 0.0));
    let ccw = Arc {
        circle,
        angle_start,
        angle_end,
        direction: Direction::CounterClockwise,
    };
    let arc = if ccw.contains_angle(excluded) {
        Arc {
            direction: Direction::Clockwise,
            ..ccw
        }
    } else {
        ccw
    };
    Ok(arc)
}

/// A pencil of circles through the boundary point `p`, with radius floor `tau`.
///
/// Member parameters `t` live in the normalized frame (`p = -1`); the circle
/// returned by [`PencilConfig::circle`] is rotated back to the caller's frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PencilConfig {
    pub p: Complex,
    pub tau: f64,
}

impl PencilConfig {
    pub fn new(p: Complex, tau: f64) -> Result<Self> {
        if !is_finite(p) || (p.norm() - 1.0).abs() > UNIT_TOL {
            return Err(Error::Config(format!("boundary point {p} is not on the unit circle")));
        }
        if !(tau > 0.0 && tau <= 1.0) {
            return Err(Error::Config(format!("radius floor tau = {tau} must lie in (0, 1]")));
        }
        Ok(Self { p, tau })
    }

    /// The pencil through `-1`.
    pub fn standard(tau: f64) -> Result<Self> {
        Self::new(Complex::new(-1.0, 0.0), tau)
    }

    /// Unit factor `u` with `u * (-1) = p`.
    pub fn rotation(&self) -> Complex {
        -self.p
    }

    pub fn to_user(&self, z: Complex) -> Complex {
        self.rotation() * z
    }

    pub fn to_normalized(&self, z: Complex) -> Complex {
        z * self.rotation().conj()
    }

    pub fn t_min(&self) -> f64 {
        -1.0 + self.tau
    }

    /// Member with parameter `t` in `[-1 + tau, 0]`, in user coordinates.
    pub fn circle(&self, t: f64) -> Result<Circle> {
        let lo = self.t_min();
        if !(t >= lo - 1e-15 && t <= 0.0) {
            return Err(Error::ParameterDomain {
                name: "t",
                value: t,
                lo,
                hi: 0.0,
            });
        }
        let c = pencil_circle(t)?;
        Circle::new(self.to_user(c.center), c.radius)
    }

    /// The smallest member, of radius `tau`.
    pub fn smallest(&self) -> Circle {
        Circle {
            center: self.to_user(Complex::new(self.t_min(), 0.0)),
            radius: self.tau,
        }
    }
}
