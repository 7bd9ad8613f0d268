//! Built-in test functions with closed-form ground truth.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::EvalError;
use crate::geometry::{Circle, Complex};
use crate::oracle::Oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Holomorphic,
    Counterexample,
    NonExtendable,
    Radial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZooFunction {
    Poly3,
    Expz,
    Rational,
    Counterexample,
    Conjugate,
    Absq,
    RadialSmooth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZooEntry {
    pub name: &'static str,
    pub function: ZooFunction,
    pub classification: Classification,
    pub formula: &'static str,
}

pub const ZOO: [ZooEntry; 7] = [
    ZooEntry {
        name: "poly3",
        function: ZooFunction::Poly3,
        classification: Classification::Holomorphic,
        formula: "z^3 - 2",
    },
    ZooEntry {
        name: "expz",
        function: ZooFunction::Expz,
        classification: Classification::Holomorphic,
        formula: "exp(z)",
    },
    ZooEntry {
        name: "rational",
        function: ZooFunction::Rational,
        classification: Classification::Holomorphic,
        formula: "1/(z - 2)",
    },
    ZooEntry {
        name: "counterexample",
        function: ZooFunction::Counterexample,
        classification: Classification::Counterexample,
        formula: "z^2/conj(z), 0 at z = 0",
    },
    ZooEntry {
        name: "conjugate",
        function: ZooFunction::Conjugate,
        classification: Classification::NonExtendable,
        formula: "conj(z)",
    },
    ZooEntry {
        name: "absq",
        function: ZooFunction::Absq,
        classification: Classification::Radial,
        formula: "|z|^2",
    },
    ZooEntry {
        name: "radial-smooth",
        function: ZooFunction::RadialSmooth,
        classification: Classification::Radial,
        formula: "exp(-1/(1 - |z|^2)), 0 for |z| >= 1",
    },
];

/// Look up a built-in function by name.
pub fn builtin(name: &str) -> Result<ZooEntry> {
    ZOO.iter()
        .copied()
        .find(|e| e.name == name)
        .ok_or_else(|| {
            let known: Vec<_> = ZOO.iter().map(|e| e.name).collect();
            Error::Config(format!("unknown builtin '{name}' (known: {})", known.join(", ")))
        })
}

pub fn holomorphic_members() -> impl Iterator<Item = ZooEntry> {
    ZOO.into_iter()
        .filter(|e| e.classification == Classification::Holomorphic)
}

/// Pole of the counterexample's extension candidate from `bΔ(a, r)`:
/// `z_p = a - r^2 / conj(a)`. `None` when `a = 0`, where the extension
/// `z^3 / r^2` is entire.
pub fn counterexample_pole(a: Complex, r: f64) -> Option<Complex> {
    if a == Complex::new(0.0, 0.0) {
        return None;
    }
    Some(a - r * r / a.conj())
}

/// The counterexample extends from `bΔ(a, r)` iff the origin lies in the
/// closed disc, i.e. `|a| <= r`.
pub fn counterexample_extends(circle: &Circle) -> bool {
    circle.center.norm() <= circle.radius
}

/// Circles through the origin: extendable, but the candidate's pole sits on
/// the circle before cancellation.
pub fn counterexample_borderline(circle: &Circle) -> bool {
    (circle.center.norm() - circle.radius).abs() <= 1e-12 * circle.radius
}

impl ZooEntry {
    pub fn value(&self, z: Complex) -> Complex {
        let zero = Complex::new(0.0, 0.0);
        match self.function {
            ZooFunction::Poly3 => z * z * z - 2.0,
            ZooFunction::Expz => z.exp(),
            ZooFunction::Rational => (z - 2.0).inv(),
            ZooFunction::Counterexample => {
                if z == zero {
                    zero
                } else {
                    z * z / z.conj()
                }
            }
            ZooFunction::Conjugate => z.conj(),
            ZooFunction::Absq => Complex::new(z.norm_sqr(), 0.0),
            ZooFunction::RadialSmooth => {
                let s = z.norm_sqr();
                if s >= 1.0 {
                    zero
                } else {
                    Complex::new((-1.0 / (1.0 - s)).exp(), 0.0)
                }
            }
        }
    }

    /// Whether `f` extends holomorphically from `circle`, when known in
    /// closed form.
    pub fn extends_from(&self, circle: &Circle) -> Option<bool> {
        let centered = circle.center == Complex::new(0.0, 0.0);
        match self.classification {
            Classification::Holomorphic => Some(true),
            Classification::NonExtendable => Some(false),
            Classification::Counterexample => Some(counterexample_extends(circle)),
            Classification::Radial if centered => Some(true),
            Classification::Radial => match self.function {
                // ζ conj(ζ) = ζ (conj a + r^2/(ζ - a)) has residue a r^2 at a.
                ZooFunction::Absq => Some(false),
                _ => None,
            },
        }
    }

    /// Closed-form value at `zeta` of the holomorphic extension from
    /// `circle`, where one is known.
    pub fn closed_form_extension(&self, circle: &Circle, zeta: Complex) -> Option<Complex> {
        if self.extends_from(circle) != Some(true) {
            return None;
        }
        let (a, r) = (circle.center, circle.radius);
        match self.function {
            ZooFunction::Poly3 | ZooFunction::Expz | ZooFunction::Rational => Some(self.value(zeta)),
            ZooFunction::Counterexample => {
                if a == Complex::new(0.0, 0.0) {
                    return Some(zeta * zeta * zeta / (r * r));
                }
                if counterexample_borderline(circle) {
                    // ā(ζ - a) + r^2 = ā ζ when |a| = r.
                    return Some(zeta * (zeta - a) / a.conj());
                }
                Some(zeta * zeta * (zeta - a) / (a.conj() * (zeta - a) + r * r))
            }
            ZooFunction::Absq => Some(Complex::new(r * r, 0.0)),
            ZooFunction::RadialSmooth => Some(self.value(Complex::new(r, 0.0))),
            ZooFunction::Conjugate => None,
        }
    }
}

impl Oracle for ZooEntry {
    fn eval(&self, z: Complex) -> std::result::Result<Complex, EvalError> {
        Ok(self.value(z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn counterexample_values() {
        let f = builtin("counterexample").unwrap();
        assert!((f.value(c(0.0, 0.5)) - c(0.0, -0.5)).norm() < 1e-15);
        assert_eq!(f.value(c(0.0, 0.0)), c(0.0, 0.0));
        assert!(builtin("nosuch").is_err());
    }

    #[test]
    fn pole_examples() {
        let zp = counterexample_pole(c(-0.7, 0.0), 0.3).unwrap();
        assert!((zp.re + 0.571428571428).abs() < 1e-9);
        assert!(((zp - c(-0.7, 0.0)).norm() - 0.09 / 0.7).abs() < 1e-15);
        assert!(!counterexample_extends(&Circle::new(c(-0.7, 0.0), 0.3).unwrap()));

        let zp = counterexample_pole(c(-0.4, 0.0), 0.6).unwrap();
        assert!(((zp - c(-0.4, 0.0)).norm() - 0.9).abs() < 1e-15);
        assert!(counterexample_extends(&Circle::new(c(-0.4, 0.0), 0.6).unwrap()));

        assert_eq!(counterexample_pole(c(0.0, 0.0), 0.5), None);
    }

    #[test]
    fn closed_form_matches_trace_on_circle() {
        let f = builtin("counterexample").unwrap();
        for circle in [
            Circle::new(c(-0.4, 0.0), 0.6).unwrap(),
            Circle::new(c(0.0, 0.0), 0.5).unwrap(),
            Circle::new(c(-0.5, 0.0), 0.5).unwrap(),
            Circle::new(c(0.1, 0.2), 0.7).unwrap(),
        ] {
            for k in 0..12 {
                let zeta = circle.point_at(0.3 + k as f64);
                if zeta.norm() < 1e-9 {
                    continue;
                }
                let ext = f.closed_form_extension(&circle, zeta).unwrap();
                assert!((ext - f.value(zeta)).norm() < 1e-12, "{circle} at {zeta}");
            }
        }
    }
}
