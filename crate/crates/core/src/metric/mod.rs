//! Translation-invariant (pseudo)metrics on the plane.
//!
//! A metric is an expression tree over a handful of combinators. Every node
//! depends only on the difference `p - q`, so translation invariance holds
//! by construction, and every node is nondecreasing when the difference is
//! scaled by `t >= 0`. The ray solver in [`ray`] relies on that monotonicity.

mod builtin;
mod parser;
mod ray;

use std::fmt;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};

pub use builtin::{Builtin, NamedMetric};
pub use parser::parse_metric;
pub use ray::{
    ray_level_range, ray_solve_distance, RayOutcome, DEFAULT_RAY_REACH, MAX_BISECTION_STEPS,
};

/// Default membership tolerance for [`DistanceSet`].
pub const DEFAULT_TOL: f64 = 1e-9;

/// A point of the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x1: f64,
    pub x2: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x1: 0.0, x2: 0.0 };

    pub const fn new(x1: f64, x2: f64) -> Self {
        Point2 { x1, x2 }
    }

    pub fn try_new(x1: f64, x2: f64) -> Result<Self> {
        if x1.is_finite() && x2.is_finite() {
            Ok(Point2 { x1, x2 })
        } else {
            Err(Error::InvalidParameter(format!(
                "non-finite point ({x1}, {x2})"
            )))
        }
    }

    pub fn norm(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    pub fn scale(self, t: f64) -> Self {
        Point2::new(self.x1 * t, self.x2 * t)
    }
}

impl Add for Point2 {
    type Output = Point2;

    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x1 + rhs.x1, self.x2 + rhs.x2)
    }
}

impl Sub for Point2 {
    type Output = Point2;

    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

/// The set `D` of forbidden distances: a singleton `{a}` or a closed
/// interval `[a, b]`, with a symmetric membership tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceSet {
    a: f64,
    b: f64,
    tol: f64,
}

impl DistanceSet {
    pub fn singleton(d: f64) -> Result<Self> {
        Self::interval(d, d)
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a <= 0.0 || b < a {
            return Err(Error::InvalidParameter(format!(
                "distance set needs 0 < a <= b, got [{a}, {b}]"
            )));
        }
        let tol = DEFAULT_TOL.min(a / 20.0);
        Ok(DistanceSet { a, b, tol })
    }

    pub fn with_tol(self, tol: f64) -> Result<Self> {
        if !(0.0..self.a / 10.0).contains(&tol) {
            return Err(Error::InvalidParameter(format!(
                "tolerance {tol} must lie in [0, a/10)"
            )));
        }
        Ok(DistanceSet { tol, ..self })
    }

    pub fn lower(&self) -> f64 {
        self.a
    }

    pub fn upper(&self) -> f64 {
        self.b
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn is_singleton(&self) -> bool {
        self.a == self.b
    }

    /// Membership in `[a - tol, b + tol]`.
    pub fn contains(&self, value: f64) -> bool {
        value >= self.a - self.tol && value <= self.b + self.tol
    }
}

impl fmt::Display for DistanceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            write!(f, "{{{}}}", self.a)
        } else {
            write!(f, "[{}, {}]", self.a, self.b)
        }
    }
}

/// Coordinate selector for [`PseudoMetricExpr::Axis`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    First,
    Second,
}

impl Axis {
    pub fn from_index(index: i64) -> Option<Axis> {
        match index {
            1 => Some(Axis::First),
            2 => Some(Axis::Second),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Axis::First => 1,
            Axis::Second => 2,
        }
    }
}

/// Expression tree for a translation-invariant pseudometric on the plane.
///
/// `Axis` alone is only a pseudometric, so definiteness is not guaranteed
/// for arbitrary trees. Build nodes through the checked constructors
/// ([`PseudoMetricExpr::cap`], etc.) or validate with
/// [`PseudoMetricExpr::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum PseudoMetricExpr {
    Euclid,
    Axis(Axis),
    /// `v / (1 + v)`
    Bound(Box<PseudoMetricExpr>),
    /// `min(v, r)`
    Cap(Box<PseudoMetricExpr>, f64),
    /// `c * v`
    Scale(Box<PseudoMetricExpr>, f64),
    Max(Vec<PseudoMetricExpr>),
}

fn check_constant(c: f64) -> Result<f64> {
    if c.is_finite() && c > 0.0 {
        Ok(c)
    } else {
        Err(Error::NonPositiveConstant { offset: 0 })
    }
}

impl PseudoMetricExpr {
    pub fn axis(index: i64) -> Result<Self> {
        Axis::from_index(index)
            .map(PseudoMetricExpr::Axis)
            .ok_or(Error::AxisIndex { index, offset: 0 })
    }

    pub fn bound(child: PseudoMetricExpr) -> Self {
        PseudoMetricExpr::Bound(Box::new(child))
    }

    pub fn cap(child: PseudoMetricExpr, r: f64) -> Result<Self> {
        Ok(PseudoMetricExpr::Cap(Box::new(child), check_constant(r)?))
    }

    pub fn scale(child: PseudoMetricExpr, c: f64) -> Result<Self> {
        Ok(PseudoMetricExpr::Scale(Box::new(child), check_constant(c)?))
    }

    pub fn max(children: Vec<PseudoMetricExpr>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::InvalidParameter(
                "max needs at least two children".into(),
            ));
        }
        Ok(PseudoMetricExpr::Max(children))
    }

    /// Checks every constant is positive and finite and every `Max` has at
    /// least two children.
    pub fn validate(&self) -> Result<()> {
        match self {
            PseudoMetricExpr::Euclid | PseudoMetricExpr::Axis(_) => Ok(()),
            PseudoMetricExpr::Bound(c) => c.validate(),
            PseudoMetricExpr::Cap(c, r) | PseudoMetricExpr::Scale(c, r) => {
                check_constant(*r)?;
                c.validate()
            }
            PseudoMetricExpr::Max(cs) => {
                if cs.len() < 2 {
                    return Err(Error::InvalidParameter(
                        "max needs at least two children".into(),
                    ));
                }
                cs.iter().try_for_each(|c| c.validate())
            }
        }
    }

    /// Distance between `p` and `q`.
    pub fn eval(&self, p: Point2, q: Point2) -> f64 {
        self.eval_delta((p.x1 - q.x1).abs(), (p.x2 - q.x2).abs())
    }

    /// Evaluates on absolute coordinate differences.
    pub fn eval_delta(&self, dx1: f64, dx2: f64) -> f64 {
        match self {
            PseudoMetricExpr::Euclid => dx1.hypot(dx2),
            PseudoMetricExpr::Axis(Axis::First) => dx1,
            PseudoMetricExpr::Axis(Axis::Second) => dx2,
            PseudoMetricExpr::Bound(c) => {
                let v = c.eval_delta(dx1, dx2);
                v / (1.0 + v)
            }
            PseudoMetricExpr::Cap(c, r) => c.eval_delta(dx1, dx2).min(*r),
            PseudoMetricExpr::Scale(c, k) => k * c.eval_delta(dx1, dx2),
            PseudoMetricExpr::Max(cs) => cs
                .iter()
                .map(|c| c.eval_delta(dx1, dx2))
                .fold(0.0, f64::max),
        }
    }

    /// Canonical text form; `parse_metric(&e.to_string()) == Ok(e)`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PseudoMetricExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PseudoMetricExpr::Euclid => f.write_str("euclid"),
            PseudoMetricExpr::Axis(a) => write!(f, "axis({})", a.index()),
            PseudoMetricExpr::Bound(c) => write!(f, "bound({c})"),
            PseudoMetricExpr::Cap(c, r) => write!(f, "cap({c}, {r})"),
            PseudoMetricExpr::Scale(c, k) => write!(f, "scale({c}, {k})"),
            PseudoMetricExpr::Max(cs) => {
                f.write_str("max(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}
