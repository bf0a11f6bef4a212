use std::fmt;

use super::{parse_metric, Axis, PseudoMetricExpr};
use crate::error::{Error, Result};

/// The named metrics of the library.
///
/// Each carries declared `is_metric` / `is_proper` flags. Random sampling
/// cannot establish definiteness or properness, so these are annotations,
/// not computed properties.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Builtin {
    /// `|x-y| / (1 + |x-y|)`; never reaches 1.
    Rho1,
    /// `max(|x1-y1|, |x2-y2| / (1 + |x2-y2|))`.
    Rho2,
    /// `min(|x-y|, 1)`.
    RhoInfinity,
    /// `max(min(|x-y|, 1), |x-y| / d)` for real `d > 1`. Its unit sphere is
    /// the Euclidean annulus `1 <= |x-y| <= d`.
    RhoStar(f64),
    /// `max(min(|x1-y1|, 1), |x1-y1| / d, |x2-y2| / (1 + |x2-y2|))` for
    /// integer `d >= 1`; non-proper, chromatic number `d + 1`.
    LineInterval(u32),
    /// Sup-product of the one-dimensional `RhoStar(d1)` and `RhoStar(d2)`
    /// metrics, one per coordinate.
    ProperProduct(u32, u32),
}

fn line_star(axis: Axis, d: u32) -> Result<PseudoMetricExpr> {
    PseudoMetricExpr::max(vec![
        PseudoMetricExpr::cap(PseudoMetricExpr::Axis(axis), 1.0)?,
        PseudoMetricExpr::scale(PseudoMetricExpr::Axis(axis), 1.0 / f64::from(d))?,
    ])
}

impl Builtin {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Builtin::RhoStar(d) if !(d.is_finite() && d > 1.0) => Err(Error::InvalidParameter(
                format!("rhostar needs real d > 1, got {d}"),
            )),
            Builtin::LineInterval(0) => Err(Error::InvalidParameter(
                "line-interval needs integer d >= 1".into(),
            )),
            Builtin::ProperProduct(d1, d2) if d1 == 0 || d2 == 0 => Err(Error::InvalidParameter(
                format!("product needs integers d1, d2 >= 1, got ({d1}, {d2})"),
            )),
            _ => Ok(()),
        }
    }

    /// Expression tree of the named metric.
    pub fn expr(&self) -> Result<PseudoMetricExpr> {
        self.validate()?;
        use PseudoMetricExpr as E;
        match *self {
            Builtin::Rho1 => Ok(E::bound(E::Euclid)),
            Builtin::Rho2 => E::max(vec![E::Axis(Axis::First), E::bound(E::Axis(Axis::Second))]),
            Builtin::RhoInfinity => E::cap(E::Euclid, 1.0),
            Builtin::RhoStar(d) => {
                E::max(vec![E::cap(E::Euclid, 1.0)?, E::scale(E::Euclid, 1.0 / d)?])
            }
            Builtin::LineInterval(d) => E::max(vec![
                E::cap(E::Axis(Axis::First), 1.0)?,
                E::scale(E::Axis(Axis::First), 1.0 / f64::from(d))?,
                E::bound(E::Axis(Axis::Second)),
            ]),
            Builtin::ProperProduct(d1, d2) => E::max(vec![
                line_star(Axis::First, d1)?,
                line_star(Axis::Second, d2)?,
            ]),
        }
    }

    pub fn is_metric(&self) -> bool {
        true
    }

    /// Closed balls are Euclidean-bounded.
    pub fn is_proper(&self) -> bool {
        matches!(self, Builtin::RhoStar(_) | Builtin::ProperProduct(..))
    }

    /// Parses `rho1`, `rho2`, `rhoinf`, `rhostar:D`, `line-interval:D` or
    /// `product:D1,D2`.
    pub fn parse(spec: &str) -> Result<Builtin> {
        let (name, params) = match spec.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (spec.trim(), None),
        };
        let bad = || Error::InvalidParameter(format!("unknown builtin metric '{spec}'"));
        let real = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
        let int = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
        let b = match (name.to_ascii_lowercase().as_str(), params) {
            ("rho1", None) => Builtin::Rho1,
            ("rho2", None) => Builtin::Rho2,
            ("rhoinf", None) => Builtin::RhoInfinity,
            ("rhostar", Some(p)) => Builtin::RhoStar(real(p)?),
            ("line-interval", Some(p)) => Builtin::LineInterval(int(p)?),
            ("product", Some(p)) => {
                let (a, b) = p.split_once(',').ok_or_else(bad)?;
                Builtin::ProperProduct(int(a)?, int(b)?)
            }
            _ => return Err(bad()),
        };
        b.validate()?;
        Ok(b)
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Rho1 => f.write_str("rho1"),
            Builtin::Rho2 => f.write_str("rho2"),
            Builtin::RhoInfinity => f.write_str("rhoinf"),
            Builtin::RhoStar(d) => write!(f, "rhostar:{d}"),
            Builtin::LineInterval(d) => write!(f, "line-interval:{d}"),
            Builtin::ProperProduct(a, b) => write!(f, "product:{a},{b}"),
        }
    }
}

/// A metric expression together with whatever is known about it.
///
/// Builtins carry declared flags; expressions parsed from the DSL carry
/// `None` because neither definiteness nor properness is machine-checked.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedMetric {
    pub name: String,
    pub expr: PseudoMetricExpr,
    pub is_metric: Option<bool>,
    pub is_proper: Option<bool>,
}

impl NamedMetric {
    pub fn builtin(b: Builtin) -> Result<Self> {
        Ok(NamedMetric {
            name: b.to_string(),
            expr: b.expr()?,
            is_metric: Some(b.is_metric()),
            is_proper: Some(b.is_proper()),
        })
    }

    pub fn unannotated(expr: PseudoMetricExpr) -> Self {
        NamedMetric {
            name: expr.to_string(),
            expr,
            is_metric: None,
            is_proper: None,
        }
    }

    /// Parses either `builtin:<name>[:<params>]` or a DSL expression.
    pub fn from_arg(arg: &str) -> Result<Self> {
        match arg.trim().strip_prefix("builtin:") {
            Some(rest) => NamedMetric::builtin(Builtin::parse(rest)?),
            None => Ok(NamedMetric::unannotated(parse_metric(arg)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Point2;

    #[test]
    fn rhostar_tree() {
        let e = Builtin::RhoStar(2.0).expr().unwrap();
        assert_eq!(
            e,
            parse_metric("max(cap(euclid,1), scale(euclid,1/2))").unwrap()
        );
    }

    #[test]
    fn line_interval_three_term_max() {
        // min(2,1) = 1 dominates 2/3 and bound(0) = 0
        let e = Builtin::LineInterval(3).expr().unwrap();
        assert_eq!(e.eval(Point2::ORIGIN, Point2::new(2.0, 0.0)), 1.0);
    }

    #[test]
    fn proper_product_diagonal() {
        let e = Builtin::ProperProduct(1, 2).expr().unwrap();
        assert_eq!(e.eval(Point2::ORIGIN, Point2::new(1.0, 1.0)), 1.0);
    }

    #[test]
    fn invalid_parameters() {
        assert!(Builtin::RhoStar(1.0).expr().is_err());
        assert!(Builtin::LineInterval(0).expr().is_err());
        assert!(Builtin::ProperProduct(0, 2).expr().is_err());
        assert!(Builtin::parse("rhostar").is_err());
        assert!(Builtin::parse("rho9").is_err());
    }

    #[test]
    fn parse_names_round_trip() {
        for b in [
            Builtin::Rho1,
            Builtin::Rho2,
            Builtin::RhoInfinity,
            Builtin::RhoStar(2.5),
            Builtin::LineInterval(4),
            Builtin::ProperProduct(2, 3),
        ] {
            assert_eq!(Builtin::parse(&b.to_string()).unwrap(), b);
        }
    }

    #[test]
    fn proper_flags() {
        assert!(!Builtin::Rho1.is_proper());
        assert!(!Builtin::Rho2.is_proper());
        assert!(!Builtin::RhoInfinity.is_proper());
        assert!(!Builtin::LineInterval(2).is_proper());
        assert!(Builtin::RhoStar(3.0).is_proper());
        assert!(Builtin::ProperProduct(2, 2).is_proper());
    }

    #[test]
    fn from_arg_dispatch() {
        let m = NamedMetric::from_arg("builtin:rho1").unwrap();
        assert_eq!(m.is_proper, Some(false));
        let m = NamedMetric::from_arg("euclid").unwrap();
        assert_eq!(m.is_proper, None);
        assert!(NamedMetric::from_arg("cap(euclid,-1)").is_err());
    }
}
