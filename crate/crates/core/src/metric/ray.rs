//! Solving `eval(x, x + t v) ∈ D` for `t > 0`.
//!
//! Along any ray the DSL metrics are continuous and nondecreasing in `t`,
//! so the set of admissible `t` is a single interval. We bracket its ends by
//! doubling and then bisect.

use super::{DistanceSet, Point2, PseudoMetricExpr};

/// Bisection step cap per bracket end.
pub const MAX_BISECTION_STEPS: usize = 200;

/// Largest `t` searched by [`ray_solve_distance`].
pub const DEFAULT_RAY_REACH: f64 = 1e6;

/// Result of a ray search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RayOutcome {
    /// Every `t` in `[t_lo, t_hi]` puts `eval` inside the target.
    Hit { t_lo: f64, t_hi: f64 },
    /// The ray never enters the target within the search reach.
    Unreachable,
    /// Bisection did not settle within [`MAX_BISECTION_STEPS`].
    NotConverged,
}

impl RayOutcome {
    pub fn t(&self) -> Option<f64> {
        match *self {
            RayOutcome::Hit { t_lo, .. } => Some(t_lo),
            _ => None,
        }
    }

    pub fn is_not_converged(&self) -> bool {
        matches!(self, RayOutcome::NotConverged)
    }
}

/// Finds the smallest `t` (up to rounding) with `eval(x, x + t v) >= a`,
/// provided that value also lies below `b + tol`.
pub fn ray_solve_distance(
    expr: &PseudoMetricExpr,
    x: Point2,
    v: Point2,
    target: &DistanceSet,
) -> RayOutcome {
    ray_level_range(expr, x, v, target, DEFAULT_RAY_REACH)
}

/// Like [`ray_solve_distance`], but also reports the largest admissible `t`
/// and stops searching at `reach`.
pub fn ray_level_range(
    expr: &PseudoMetricExpr,
    _x: Point2,
    v: Point2,
    target: &DistanceSet,
    reach: f64,
) -> RayOutcome {
    let (vx, vy) = (v.x1.abs(), v.x2.abs());
    if vx == 0.0 && vy == 0.0 {
        return RayOutcome::Unreachable;
    }
    let f = |t: f64| expr.eval_delta(t * vx, t * vy);
    let (a, b) = (target.lower(), target.upper());

    let mut hi = 1.0_f64.min(reach);
    while f(hi) < a {
        if hi >= reach {
            return RayOutcome::Unreachable;
        }
        hi = (hi * 2.0).min(reach);
    }
    let Some(t_lo) = bisect(0.0, hi, |t| f(t) >= a) else {
        return RayOutcome::NotConverged;
    };
    if !target.contains(f(t_lo)) {
        return RayOutcome::Unreachable;
    }

    let mut hi = t_lo;
    loop {
        if f(hi) > b {
            break;
        }
        if hi >= reach {
            return RayOutcome::Hit { t_lo, t_hi: reach };
        }
        hi = (hi * 2.0).min(reach);
    }
    // largest t with f(t) <= b, approached from below
    match bisect(t_lo, hi, |t| f(t) > b) {
        Some(h) => {
            let mut t_hi = h;
            let mut guard = 0;
            while f(t_hi) > b && t_hi > t_lo && guard < 64 {
                t_hi = prev_float(t_hi);
                guard += 1;
            }
            RayOutcome::Hit {
                t_lo,
                t_hi: t_hi.max(t_lo),
            }
        }
        None => RayOutcome::NotConverged,
    }
}

/// Bisects for the boundary of a monotone predicate that is false at `lo`
/// and true at `hi`; returns the true side.
fn bisect(mut lo: f64, mut hi: f64, pred: impl Fn(f64) -> bool) -> Option<f64> {
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * hi {
            return Some(hi);
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    None
}

fn prev_float(x: f64) -> f64 {
    if x > 0.0 {
        f64::from_bits(x.to_bits() - 1)
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Builtin;

    fn unit(theta: f64) -> Point2 {
        Point2::new(theta.cos(), theta.sin())
    }

    #[test]
    fn rho1_never_reaches_one() {
        let e = Builtin::Rho1.expr().unwrap();
        let d = DistanceSet::singleton(1.0).unwrap();
        for i in 0..64 {
            let out = ray_solve_distance(&e, Point2::new(i as f64, -3.0), unit(i as f64 * 0.1), &d);
            assert_eq!(out, RayOutcome::Unreachable);
        }
    }

    #[test]
    fn euclid_unit() {
        let d = DistanceSet::singleton(1.0).unwrap();
        let t = ray_solve_distance(
            &PseudoMetricExpr::Euclid,
            Point2::ORIGIN,
            Point2::new(1.0, 0.0),
            &d,
        )
        .t()
        .unwrap();
        assert!((t - 1.0).abs() <= 1e-12, "{t}");
    }

    #[test]
    fn rho_infinity_any_t_at_least_one() {
        let e = Builtin::RhoInfinity.expr().unwrap();
        let d = DistanceSet::singleton(1.0).unwrap();
        let out = ray_solve_distance(&e, Point2::ORIGIN, Point2::new(0.0, 1.0), &d);
        let RayOutcome::Hit { t_lo, t_hi } = out else {
            panic!("{out:?}")
        };
        assert!(t_lo >= 1.0);
        assert_eq!(t_hi, DEFAULT_RAY_REACH);
    }

    #[test]
    fn rhostar_level_set_is_the_annulus() {
        let e = Builtin::RhoStar(3.0).expr().unwrap();
        let d = DistanceSet::singleton(1.0).unwrap();
        let RayOutcome::Hit { t_lo, t_hi } = ray_solve_distance(&e, Point2::ORIGIN, unit(0.7), &d)
        else {
            panic!()
        };
        assert!((t_lo - 1.0).abs() < 1e-12);
        assert!((t_hi - 3.0).abs() < 1e-12);
        assert!(e.eval_delta(t_hi * 0.7f64.cos().abs(), t_hi * 0.7f64.sin().abs()) <= 1.0);
    }

    #[test]
    fn interval_target_range() {
        let d = DistanceSet::interval(1.0, 2.0).unwrap();
        let RayOutcome::Hit { t_lo, t_hi } =
            ray_solve_distance(&PseudoMetricExpr::Euclid, Point2::ORIGIN, unit(2.0), &d)
        else {
            panic!()
        };
        assert!((t_lo - 1.0).abs() < 1e-12 && (t_hi - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_direction_is_unreachable() {
        let d = DistanceSet::singleton(1.0).unwrap();
        let out = ray_solve_distance(
            &PseudoMetricExpr::Euclid,
            Point2::ORIGIN,
            Point2::ORIGIN,
            &d,
        );
        assert_eq!(out, RayOutcome::Unreachable);
    }

    #[test]
    fn reach_limits_search() {
        let d = DistanceSet::singleton(1.0).unwrap();
        let out = ray_level_range(
            &PseudoMetricExpr::Euclid,
            Point2::ORIGIN,
            unit(0.0),
            &d,
            0.5,
        );
        assert_eq!(out, RayOutcome::Unreachable);
    }
}
