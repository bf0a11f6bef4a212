//! Explicit colorings of the plane and of the line, and clique
//! constructions certifying lower bounds.
//!
//! All grid-type colorings use `floor` on each axis: a cell contains its
//! closed left and bottom edges and excludes its right and top edges.

use crate::coloring::{ColorCount, ColorLabel, ColorRule, Domain};
use crate::error::{Error, Result};
use crate::metric::{Builtin, DistanceSet, Point2, PseudoMetricExpr};

fn floor_i64(x: f64) -> i64 {
    x.floor() as i64
}

/// Alternating vertical strips of width 1: `floor(x1) mod 2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StripColoring;

pub fn strip_coloring() -> StripColoring {
    StripColoring
}

impl ColorRule for StripColoring {
    fn name(&self) -> String {
        "strip".into()
    }

    fn domain(&self) -> Domain {
        Domain::Plane
    }

    fn color_count(&self) -> ColorCount {
        ColorCount::Finite(2)
    }

    fn moduli(&self) -> Option<(u64, u64)> {
        Some((2, 1))
    }

    fn label(&self, x: f64, _y: f64) -> ColorLabel {
        ColorLabel::new(floor_i64(x).rem_euclid(2), 0)
    }
}

/// Squares of side `eps`, labelled by their grid indices mod `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridModColoring {
    eps: f64,
    n: u64,
}

pub fn grid_mod_coloring(eps: f64, n: u64) -> Result<GridModColoring> {
    if !(eps.is_finite() && eps > 0.0) || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid coloring needs eps > 0 and n >= 2, got eps={eps}, n={n}"
        )));
    }
    Ok(GridModColoring { eps, n })
}

impl GridModColoring {
    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Grid square `(a, b)` containing `(x, y)`.
    pub fn cell(&self, x: f64, y: f64) -> (i64, i64) {
        (floor_i64(x / self.eps), floor_i64(y / self.eps))
    }

    /// The coloring used for `D = [1, d]` in the Euclidean plane:
    /// `eps = 1/√2`, `n = ceil(√2 d + 1)`.
    pub fn for_euclid_interval(d: f64) -> Result<Self> {
        if !(d.is_finite() && d >= 1.0) {
            return Err(Error::InvalidParameter(format!("need d >= 1, got {d}")));
        }
        grid_mod_coloring(
            std::f64::consts::FRAC_1_SQRT_2,
            (2f64.sqrt() * d + 1.0).ceil() as u64,
        )
    }
}

impl ColorRule for GridModColoring {
    fn name(&self) -> String {
        format!("grid(eps={}, n={})", self.eps, self.n)
    }

    fn domain(&self) -> Domain {
        Domain::Plane
    }

    fn color_count(&self) -> ColorCount {
        ColorCount::Finite(self.n * self.n)
    }

    fn moduli(&self) -> Option<(u64, u64)> {
        Some((self.n, self.n))
    }

    fn label(&self, x: f64, y: f64) -> ColorLabel {
        let (a, b) = self.cell(x, y);
        let n = self.n as i64;
        ColorLabel::new(a.rem_euclid(n), b.rem_euclid(n))
    }
}

/// A coloring of the line by consecutive half-open unit intervals,
/// `floor(x) mod n`. With `n = 1` it is the constant coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineColoring {
    n: u64,
}

impl LineColoring {
    /// The one-color coloring.
    pub const fn constant() -> Self {
        LineColoring { n: 1 }
    }

    pub fn colors(&self) -> u64 {
        self.n
    }

    pub fn color(&self, x: f64) -> i64 {
        floor_i64(x).rem_euclid(self.n as i64)
    }
}

/// `floor(x) mod n`; proper for `D = [1, d]` whenever `d <= n - 1`.
pub fn interval_1d_coloring(n: u64) -> Result<LineColoring> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "interval coloring needs n >= 2, got {n}"
        )));
    }
    Ok(LineColoring { n })
}

/// `c(x1, x2) = (c1(x1), c2(x2))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductColoring {
    pub first: LineColoring,
    pub second: LineColoring,
}

pub fn product_coloring(first: LineColoring, second: LineColoring) -> ProductColoring {
    ProductColoring { first, second }
}

impl ColorRule for ProductColoring {
    fn name(&self) -> String {
        format!("product({}x{})", self.first.n, self.second.n)
    }

    fn domain(&self) -> Domain {
        Domain::Plane
    }

    fn color_count(&self) -> ColorCount {
        ColorCount::Finite(self.first.n * self.second.n)
    }

    fn moduli(&self) -> Option<(u64, u64)> {
        Some((self.first.n, self.second.n))
    }

    fn label(&self, x: f64, y: f64) -> ColorLabel {
        ColorLabel::new(self.first.color(x), self.second.color(y))
    }
}

/// Squares of side `side` labelled by their (unreduced) grid indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareColoring {
    side: f64,
}

/// Countable square coloring; requires diagonal `side √2 < 1`, so that no
/// square holds two points at distance 1.
pub fn countable_square_coloring(side: f64) -> Result<SquareColoring> {
    if !(side.is_finite() && side > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "square side must be > 0, got {side}"
        )));
    }
    if side * std::f64::consts::SQRT_2 >= 1.0 {
        return Err(Error::Precondition(format!(
            "square diagonal {} is not below 1",
            side * std::f64::consts::SQRT_2
        )));
    }
    Ok(SquareColoring { side })
}

impl ColorRule for SquareColoring {
    fn name(&self) -> String {
        format!("squares(side={})", self.side)
    }

    fn domain(&self) -> Domain {
        Domain::Plane
    }

    fn color_count(&self) -> ColorCount {
        ColorCount::Unbounded
    }

    fn moduli(&self) -> Option<(u64, u64)> {
        None
    }

    fn label(&self, x: f64, y: f64) -> ColorLabel {
        ColorLabel::new(floor_i64(x / self.side), floor_i64(y / self.side))
    }
}

/// Everything gets color `(0, 0)`. Useful as a control that must fail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantColoring {
    pub domain: Domain,
}

impl ColorRule for ConstantColoring {
    fn name(&self) -> String {
        "constant".into()
    }

    fn domain(&self) -> Domain {
        self.domain
    }

    fn color_count(&self) -> ColorCount {
        ColorCount::Finite(1)
    }

    fn moduli(&self) -> Option<(u64, u64)> {
        Some((1, 1))
    }

    fn label(&self, _x: f64, _y: f64) -> ColorLabel {
        ColorLabel::new(0, 0)
    }
}

/// A point set whose pairwise distances all lie in a target set.
#[derive(Debug, Clone, PartialEq)]
pub struct CliqueWitness {
    pub points: Vec<Point2>,
    pub metric: PseudoMetricExpr,
    pub target: DistanceSet,
    /// Largest amount by which a pairwise distance falls outside
    /// `[target.lower(), target.upper()]`; 0 when all are inside.
    pub max_residual: f64,
}

impl CliqueWitness {
    pub fn new(points: Vec<Point2>, metric: PseudoMetricExpr, target: DistanceSet) -> Self {
        let max_residual = residual(&points, &metric, &target);
        CliqueWitness {
            points,
            metric,
            target,
            max_residual,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Whether every pair lies in the target widened by its tolerance.
    pub fn is_valid(&self) -> bool {
        self.max_residual <= self.target.tol()
    }
}

fn residual(points: &[Point2], metric: &PseudoMetricExpr, target: &DistanceSet) -> f64 {
    let mut worst = 0.0f64;
    for (i, &p) in points.iter().enumerate() {
        for &q in &points[i + 1..] {
            let r = metric.eval(p, q);
            worst = worst.max(target.lower() - r).max(r - target.upper());
        }
    }
    worst
}

/// The `(d1+1)(d2+1)` integer points of `[0,d1] x [0,d2]`, pairwise at
/// distance exactly 1 under `ProperProduct(d1, d2)`.
pub fn grid_clique(d1: u32, d2: u32) -> Result<CliqueWitness> {
    let metric = Builtin::ProperProduct(d1, d2).expr()?;
    let points = (0..=d1)
        .flat_map(|i| (0..=d2).map(move |j| Point2::new(f64::from(i), f64::from(j))))
        .collect();
    Ok(CliqueWitness::new(
        points,
        metric,
        DistanceSet::singleton(1.0)?,
    ))
}

/// Hexagonal lattice offsets tried as disc centers: a lattice point, an
/// edge midpoint and a triangle centroid.
const PACKING_CENTERS: [(f64, f64); 3] = [(0.0, 0.0), (0.5, 0.0), (0.5, 0.288_675_134_594_812_9)];

/// Unit hexagonal lattice points inside a closed disc of diameter `d`.
///
/// Every pair is at Euclidean distance in `[1, d]`, so the points are the
/// centers of a packing of diameter-1 discs in a disc of diameter `d + 1`.
/// The best of a few disc centers is kept.
pub fn euclid_packing_clique(d: f64) -> Result<CliqueWitness> {
    if !(d.is_finite() && d > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "packing needs d > 1, got {d}"
        )));
    }
    let radius = 0.5 * d * (1.0 + 1e-12);
    let h = 3f64.sqrt() / 2.0;
    let rows = (radius / h).ceil() as i64 + 1;
    let best = PACKING_CENTERS
        .iter()
        .map(|&(cx, cy)| {
            let mut pts = Vec::new();
            for j in -rows..=rows {
                let y = j as f64 * h - cy;
                if y.abs() > radius {
                    continue;
                }
                let shift = 0.5 * j as f64 - cx;
                let span = (radius * radius - y * y).max(0.0).sqrt();
                let lo = (-span - shift).ceil() as i64 - 1;
                let hi = (span - shift).floor() as i64 + 1;
                for i in lo..=hi {
                    let x = i as f64 + shift;
                    if x.hypot(y) <= radius {
                        pts.push(Point2::new(x, y));
                    }
                }
            }
            pts
        })
        .fold(
            Vec::new(),
            |best, pts| if pts.len() > best.len() { pts } else { best },
        );
    Ok(CliqueWitness::new(
        best,
        PseudoMetricExpr::Euclid,
        DistanceSet::interval(1.0, d)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_labels() {
        let c = strip_coloring();
        assert_eq!(c.label(0.5, 7.0).u, 0);
        assert_eq!(c.label(1.5, -3.0).u, 1);
        assert_eq!(c.label(1.0, 0.0).u, 1);
        assert_eq!(c.label(-0.5, 0.0).u, 1);
        let rho2 = Builtin::Rho2.expr().unwrap();
        let (p, q) = (Point2::new(0.2, 0.0), Point2::new(1.2, 5.0));
        assert!((rho2.eval(p, q) - 1.0).abs() < 1e-15);
        assert_ne!(c.label(p.x1, p.x2), c.label(q.x1, q.x2));
    }

    #[test]
    fn grid_labels() {
        let g = grid_mod_coloring(std::f64::consts::FRAC_1_SQRT_2, 4).unwrap();
        assert_eq!(g.color_count(), ColorCount::Finite(16));
        assert_eq!(g.label(0.0, 0.0), ColorLabel::new(0, 0));
        assert_eq!(g.label(-0.1, 3.0), ColorLabel::new(3, 0));
        assert_eq!(GridModColoring::for_euclid_interval(2.0).unwrap(), g);
        assert!(grid_mod_coloring(0.0, 4).is_err());
        assert!(grid_mod_coloring(1.0, 1).is_err());
    }

    #[test]
    fn interval_labels() {
        let c = interval_1d_coloring(3).unwrap();
        assert_eq!(c.color(2.5), 2);
        let c2 = interval_1d_coloring(2).unwrap();
        assert_ne!(c2.color(0.5), c2.color(1.5));
        assert!(interval_1d_coloring(1).is_err());
    }

    #[test]
    fn interval_coloring_brute_force() {
        // n = ceil(d) + 1 colors separate every pair at distance in [1, d]
        for &d in &[1.0f64, 1.5, 2.0, 3.7] {
            let n = d.ceil() as u64 + 1;
            let c = interval_1d_coloring(n).unwrap();
            for i in 0..400 {
                let x = -20.0 + i as f64 * 0.1003;
                for j in 0..=40 {
                    let y = x + 1.0 + (d - 1.0) * j as f64 / 40.0;
                    assert_ne!(c.color(x), c.color(y), "d={d} x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn product_counts() {
        let p = product_coloring(
            interval_1d_coloring(2).unwrap(),
            interval_1d_coloring(3).unwrap(),
        );
        assert_eq!(p.color_count(), ColorCount::Finite(6));
        let id = product_coloring(LineColoring::constant(), interval_1d_coloring(3).unwrap());
        assert_eq!(id.color_count(), ColorCount::Finite(3));
        assert_eq!(id.label(5.0, 2.5), ColorLabel::new(0, 2));
    }

    #[test]
    fn squares() {
        let s = countable_square_coloring(0.7).unwrap();
        assert_eq!(s.label(0.0, 0.0), s.label(0.1, 0.1));
        assert_eq!(s.color_count(), ColorCount::Unbounded);
        assert!(matches!(
            countable_square_coloring(0.8),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn grid_clique_exact() {
        let w = grid_clique(1, 2).unwrap();
        assert_eq!(w.len(), 6);
        for (i, &p) in w.points.iter().enumerate() {
            for &q in &w.points[i + 1..] {
                assert_eq!(w.metric.eval(p, q), 1.0);
            }
        }
        assert_eq!(w.max_residual, 0.0);
        assert_eq!(grid_clique(1, 1).unwrap().len(), 4);
        assert!(grid_clique(0, 0).is_err());
    }

    #[test]
    fn packing_at_two_is_hexagon() {
        let w = euclid_packing_clique(2.0).unwrap();
        assert_eq!(w.len(), 7);
        assert!(w.max_residual <= 1e-12);
        let mut ds: Vec<f64> = Vec::new();
        for (i, &p) in w.points.iter().enumerate() {
            for &q in &w.points[i + 1..] {
                ds.push((p - q).norm());
            }
        }
        for d in ds {
            assert!(
                [1.0, 3f64.sqrt(), 2.0]
                    .iter()
                    .any(|t| (d - t).abs() < 1e-12),
                "unexpected distance {d}"
            );
        }
    }

    #[test]
    fn packing_just_above_one() {
        assert_eq!(euclid_packing_clique(1.0 + 1e-9).unwrap().len(), 2);
        assert!(euclid_packing_clique(1.0).is_err());
    }

    #[test]
    fn packing_counts_frozen() {
        assert_eq!(euclid_packing_clique(20.0).unwrap().len(), 367);
        assert_eq!(euclid_packing_clique(80.0).unwrap().len(), 5815);
    }
}
