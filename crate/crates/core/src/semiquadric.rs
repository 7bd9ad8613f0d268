//! Semiquadrics `Λ_{a,r} = {(z, w) : (z - a)(w - conj(a)) = r^2, 0 < |z - a| < r}`.
//!
//! A trace on the circle `bΔ(a, r)` extends holomorphically into the disc
//! exactly when the function `(ζ, conj ζ) ↦ f(ζ)` extends holomorphically
//! along `Λ_{a,r}`, whose fiber over `z` is the single point
//! `w = conj(a) + r^2 / (z - a)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{surrounds, Circle, Complex};

/// A point of `C ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Extended {
    Finite(Complex),
    Infinity,
}

impl Extended {
    pub fn finite(self) -> Option<Complex> {
        match self {
            Extended::Finite(w) => Some(w),
            Extended::Infinity => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Semiquadric {
    pub a: Complex,
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadricPoint {
    pub z: Complex,
    pub w: Extended,
}

impl Semiquadric {
    pub fn new(a: Complex, r: f64) -> Result<Self> {
        let c = Circle::new(a, r)?;
        Ok(Self {
            a: c.center,
            r: c.radius,
        })
    }

    pub fn from_circle(circle: &Circle) -> Self {
        Self {
            a: circle.center,
            r: circle.radius,
        }
    }

    /// The pencil member `Λ_{t, t+1}`.
    pub fn pencil(t: f64) -> Result<Self> {
        Ok(Self::from_circle(&crate::geometry::pencil_circle(t)?))
    }

    pub fn circle(&self) -> Circle {
        Circle {
            center: self.a,
            radius: self.r,
        }
    }

    /// Residual of the defining equation, relative to `r^2`.
    pub fn residual(&self, p: &QuadricPoint) -> Option<f64> {
        let w = p.w.finite()?;
        let r2 = self.r * self.r;
        Some(((p.z - self.a) * (w - self.a.conj()) - r2).norm() / r2)
    }
}

/// The `w`-coordinate over `z`: `conj(a) + r^2 / (z - a)`, or `∞` over the center.
pub fn fiber_w(q: &Semiquadric, z: Complex) -> Result<Extended> {
    let d = z - q.a;
    if d.norm() > q.r * (1.0 + 1e-12) {
        return Err(Error::Domain {
            point: z,
            reason: format!("outside the closed disc of {}", q.circle()),
        });
    }
    if d == Complex::new(0.0, 0.0) {
        return Ok(Extended::Infinity);
    }
    Ok(Extended::Finite(q.a.conj() + q.r * q.r / d))
}

/// Whether `Λ_{a,r}` meets `Λ_{b,ρ}`: iff `a ≠ b` and one boundary circle
/// surrounds the other.
pub fn quadrics_intersect(q1: &Semiquadric, q2: &Semiquadric) -> Result<bool> {
    if q1 == q2 {
        return Err(Error::Invalid(
            "cannot compare a semiquadric with itself".into(),
        ));
    }
    if q1.a == q2.a {
        return Ok(false);
    }
    let (c1, c2) = (q1.circle(), q2.circle());
    Ok(surrounds(&c1, &c2) || surrounds(&c2, &c1))
}

/// The single point of `Λ_{0,R} ∩ Λ_{t,t+1}`, which exists iff `R < 2t + 1`
/// (with `t < 0`).
///
/// Eliminating `w = R^2 / z` leaves
/// `t z^2 - (R^2 + t^2 - (t+1)^2) z + t R^2 = 0`; the root satisfying both
/// membership constraints is returned. Its partner root is `w` itself.
pub fn family_intersection_point(r_big: f64, t: f64) -> Result<QuadricPoint> {
    if !(r_big > 0.0 && r_big <= 1.0) {
        return Err(Error::ParameterDomain {
            name: "R",
            value: r_big,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if !(t > -1.0 && t <= 0.0) {
        return Err(Error::ParameterDomain {
            name: "t",
            value: t,
            lo: -1.0,
            hi: 0.0,
        });
    }
    let centered = Semiquadric::new(Complex::new(0.0, 0.0), r_big)?;
    let pencil = Semiquadric::pencil(t)?;
    if centered == pencil || !quadrics_intersect(&centered, &pencil)? {
        return Err(Error::NoIntersection(format!(
            "Λ(0, {r_big}) and Λ({t}, {}) are disjoint (need R < 2t + 1 and t < 0)",
            t + 1.0
        )));
    }

    let r2 = r_big * r_big;
    let b = r2 + t * t - (t + 1.0) * (t + 1.0);
    // t z^2 - b z + t R^2 = 0 with t < 0; discriminant b^2 - 4 t^2 R^2.
    let disc = b * b - 4.0 * t * t * r2;
    let roots: Vec<Complex> = if disc >= 0.0 {
        // Cancellation-free pair: q = (b + sign(b) sqrt(disc)) / 2.
        let q = 0.5 * (b + b.signum() * disc.sqrt());
        vec![Complex::new(q / t, 0.0), Complex::new(t * r2 / q, 0.0)]
    } else {
        let s = (-disc).sqrt();
        vec![
            Complex::new(b / (2.0 * t), s / (2.0 * t)),
            Complex::new(b / (2.0 * t), -s / (2.0 * t)),
        ]
    };
    let members = |z: Complex| {
        let n = z.norm();
        n > 0.0 && n < r_big && {
            let d = (z - t).norm();
            d > 0.0 && d < t + 1.0
        }
    };
    let mut admissible = roots.into_iter().filter(|&z| members(z));
    let z = admissible.next().ok_or_else(|| {
        Error::NoIntersection(format!("no quadratic root satisfies the membership constraints (R = {r_big}, t = {t})"))
    })?;
    if admissible.next().is_some() {
        return Err(Error::Invalid(format!(
            "both roots admissible for R = {r_big}, t = {t}"
        )));
    }
    Ok(QuadricPoint {
        z,
        w: Extended::Finite(r2 / z),
    })
}

/// Residual below which the imaginary part of a recovered pencil parameter
/// is considered round-off.
const PARAM_IM_TOL: f64 = 1e-8;

/// Recover the pencil parameter `t` with `w = t + (t+1)^2 / (z - t)`:
/// `t = (w z - 1) / (w + z + 2)`.
pub fn invert_pencil_fiber(z: Complex, w: Complex) -> Result<f64> {
    let denom = w + z + 2.0;
    if denom.norm() <= 1e-14 {
        return Err(Error::Degenerate(format!(
            "w + z + 2 = 0 at z = {z}, w = {w}"
        )));
    }
    let t = (w * z - 1.0) / denom;
    if t.im.abs() > PARAM_IM_TOL {
        return Err(Error::Domain {
            point: w,
            reason: format!("not on a pencil semiquadric over z = {z} (Im t = {:.3e})", t.im),
        });
    }
    Ok(t.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn fiber_examples() {
        let q = Semiquadric::new(c(0.0, 0.0), 0.5).unwrap();
        assert_eq!(fiber_w(&q, c(0.25, 0.0)).unwrap(), Extended::Finite(c(1.0, 0.0)));
        assert_eq!(fiber_w(&q, c(0.0, 0.0)).unwrap(), Extended::Infinity);
        assert!(fiber_w(&q, c(0.6, 0.0)).is_err());

        let q = Semiquadric::new(c(-0.25, 0.0), 0.75).unwrap();
        let w = fiber_w(&q, c(0.0, 0.5)).unwrap().finite().unwrap();
        assert!((w - c(0.2, -0.9)).norm() < 1e-15);

        let q = Semiquadric::new(c(0.0, 0.0), 1.0).unwrap();
        let z = Complex::from_polar(1.0, 2.1);
        let w = fiber_w(&q, z).unwrap().finite().unwrap();
        assert!((w - z.conj()).norm() < 1e-15);
    }

    #[test]
    fn intersection_examples() {
        let outer = Semiquadric::new(c(-0.2, 0.0), 0.8).unwrap();
        let q = |r| Semiquadric::new(c(0.0, 0.0), r).unwrap();
        assert!(quadrics_intersect(&q(0.5), &outer).unwrap());
        assert!(!quadrics_intersect(&q(0.7), &outer).unwrap());
        assert!(!quadrics_intersect(&q(0.5), &q(0.9)).unwrap());
        assert!(quadrics_intersect(&q(0.5), &q(0.5)).is_err());
    }

    #[test]
    fn family_point_example() {
        let p = family_intersection_point(0.5, -0.2).unwrap();
        let w = p.w.finite().unwrap();
        assert!((p.z.re - 0.156929).abs() < 1e-6);
        assert!((w.re - 1.593070).abs() < 1e-6);
        assert!(p.z.re > 0.0 && w.re > 0.0);
        assert!(p.z.im == 0.0 && w.im == 0.0);
        assert!(Semiquadric::new(c(0.0, 0.0), 0.5).unwrap().residual(&p).unwrap() < 1e-12);
        assert!(Semiquadric::pencil(-0.2).unwrap().residual(&p).unwrap() < 1e-12);

        assert!(matches!(family_intersection_point(0.6, -0.2), Err(Error::NoIntersection(_))));
        assert!(matches!(family_intersection_point(0.5, 0.0), Err(Error::NoIntersection(_))));
    }

    #[test]
    fn inversion_examples() {
        let z = c(0.0, 0.5);
        assert!((invert_pencil_fiber(z, c(0.2, -0.9)).unwrap() + 0.25).abs() < 1e-14);
        assert!(invert_pencil_fiber(z, z.inv()).unwrap().abs() < 1e-15);
        assert!((invert_pencil_fiber(z, z.conj()).unwrap() + 0.375).abs() < 1e-15);
        assert!(invert_pencil_fiber(z, c(1.0, 1.0)).is_err());
        assert!(matches!(
            invert_pencil_fiber(c(-1.0, 0.0), c(-1.0, 0.0)),
            Err(Error::Degenerate(_))
        ));
    }
}
