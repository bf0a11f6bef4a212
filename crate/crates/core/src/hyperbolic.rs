//! The upper half-plane model of ℍ² (curvature −1) and the checkerboard
//! colorings built on it.
//!
//! A `(h, ℓ)`-checkerboard cuts the half-plane into horizontal strips
//! `S_n = { e^{nh} <= y < e^{(n+1)h} }` and each strip into Euclidean
//! rectangles `R_{n,k} = { k w_n <= x < (k+1) w_n }` with `w_n = r e^{nh}`,
//! where `r = 2 sinh(ℓ/2)` makes the bottom edge of every tile of geodesic
//! length `ℓ`. Tiles are closed at the bottom and left, open at the top and
//! right.
//!
//! Closed forms below favour `asinh`/`sinh` over `acosh`/`cosh`
//! differences, which lose about half the significant digits near zero.

use std::f64::consts::{FRAC_PI_4, LN_2, PI};

use crate::coloring::{ColorCount, ColorLabel, ColorRule, Domain};
use crate::error::{Error, Result};

/// `ln 3`, the strip height of the high-curvature checkerboard.
pub const LN_3: f64 = 1.098_612_288_668_109_7;

/// Smallest `d` covered by the high-curvature coloring, `3 ln 3`.
pub const HIGH_CURVATURE_MIN_D: f64 = 3.0 * LN_3;

/// Largest `d` covered by the low-curvature coloring, `2 ln(3/2)`.
pub const LOW_CURVATURE_MAX_D: f64 = 2.0 * (LN_3 - LN_2);

/// Largest `d` at which the low-curvature coloring keeps same-colored tiles
/// of one strip at least `d` apart: the root of
/// `2 asinh(3 sinh(d/4) e^{-d/2}) = d`. Between this value and
/// [`LOW_CURVATURE_MAX_D`], two points near the top of a strip, in columns
/// four apart, can be closer than `d` and share a color.
pub const LOW_CURVATURE_SAFE_D: f64 = 0.773_743_792_473_700_5;

/// Relative slack for threshold and ceiling comparisons, so that inputs
/// written as `k * ln 3` in floating point land on the intended side.
const REL_SLACK: f64 = 1e-12;

/// Slack on `|sin|`, `|cos|` before declaring an angle solve impossible.
const ANGLE_SLACK: f64 = 1e-12;

/// A point of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() && y > 0.0 {
            Ok(HPoint { x, y })
        } else {
            Err(Error::InvalidParameter(format!(
                "({x}, {y}) is not in the half-plane"
            )))
        }
    }

    pub(crate) const fn new_unchecked(x: f64, y: f64) -> Self {
        HPoint { x, y }
    }
}

/// Hyperbolic distance, `2 asinh(|p - q| / (2 sqrt(y_p y_q)))`, which equals
/// `arcosh(1 + |p - q|² / (2 y_p y_q))`.
pub fn hyp_distance(p: HPoint, q: HPoint) -> f64 {
    let e = (p.x - q.x).hypot(p.y - q.y);
    2.0 * (e / (2.0 * (p.y * q.y).sqrt())).asinh()
}

/// Point on the hyperbolic circle of radius `d` about `c`.
///
/// That circle is the Euclidean circle with center `(c.x, c.y cosh d)` and
/// radius `c.y sinh d`; `theta` is the Euclidean angle on it, so
/// `theta = π/2` is the top `(c.x, c.y e^d)`.
pub fn circle_point(c: HPoint, d: f64, theta: f64) -> HPoint {
    let s = d.sinh();
    let half = (FRAC_PI_4 + 0.5 * theta).sin();
    // cosh d + sinh d sin θ without cancellation near θ = -π/2
    let y = c.y * ((-d).exp() + 2.0 * s * half * half);
    HPoint::new_unchecked(c.x + c.y * s * theta.cos(), y)
}

/// Point at hyperbolic distance `radius` from `c`, leaving `c` at hyperbolic
/// angle `angle` (0 points straight up, toward larger `y`).
pub fn polar_point(c: HPoint, radius: f64, angle: f64) -> HPoint {
    // Poincaré disk point tanh(ρ/2) e^{iα}, then the Cayley map to the
    // half-plane sending 0 to i, then the isometry z -> c.x + c.y z.
    let half = 0.5 * radius;
    let t = half.tanh();
    let one_minus_t = (-half).exp() / half.cosh();
    let s2 = (0.5 * angle).sin();
    let a = one_minus_t + 2.0 * t * s2 * s2;
    let b = t * angle.sin();
    let den = a * a + b * b;
    let sech = 1.0 / half.cosh();
    let x = 2.0 * b / den;
    let y = sech * sech / den;
    HPoint::new_unchecked(c.x + c.y * x, c.y * y)
}

/// Index of a checkerboard tile: strip `n`, column `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileIndex {
    pub n: i64,
    pub k: i64,
}

/// A `(h, ℓ)`-checkerboard tiling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checkerboard {
    h: f64,
    ell: f64,
    r: f64,
}

impl Checkerboard {
    pub fn new(h: f64, ell: f64) -> Result<Self> {
        if !(h.is_finite() && ell.is_finite() && h > 0.0 && ell > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "checkerboard needs h, ell > 0, got ({h}, {ell})"
            )));
        }
        Ok(Checkerboard {
            h,
            ell,
            r: 2.0 * (0.5 * ell).sinh(),
        })
    }

    /// Strip height (hyperbolic).
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Geodesic length of a tile's bottom edge.
    pub fn ell(&self) -> f64 {
        self.ell
    }

    /// Euclidean tile width at `y = 1`.
    pub fn r(&self) -> f64 {
        self.r
    }

    /// `e^{nh}`, the closed lower boundary of strip `n`.
    pub fn strip_floor(&self, n: i64) -> f64 {
        (n as f64 * self.h).exp()
    }

    /// Euclidean width of the tiles in strip `n`.
    pub fn tile_width(&self, n: i64) -> f64 {
        self.r * self.strip_floor(n)
    }

    /// Tile containing `p`, exact with respect to the boundaries
    /// [`Self::strip_floor`] and `k * tile_width(n)`.
    pub fn tile_of(&self, p: HPoint) -> TileIndex {
        let mut n = (p.y.ln() / self.h).floor() as i64;
        while p.y < self.strip_floor(n) {
            n -= 1;
        }
        while p.y >= self.strip_floor(n + 1) {
            n += 1;
        }
        let w = self.tile_width(n);
        let mut k = (p.x / w).floor() as i64;
        while p.x < k as f64 * w {
            k -= 1;
        }
        while p.x >= (k + 1) as f64 * w {
            k += 1;
        }
        TileIndex { n, k }
    }

    /// `max(ℓ, h + e^{-h} ℓ)`, an upper bound on every tile's diameter that
    /// is never attained.
    pub fn tile_diameter_bound(&self) -> f64 {
        self.ell.max(self.h + (-self.h).exp() * self.ell)
    }

    /// Infimum of the distance between two points of one strip lying in
    /// columns `k` and `k + gap` (`gap >= 1`). It is approached at the open
    /// top of the strip, where the columns are `(gap - 1)` widths apart.
    pub fn same_strip_separation(&self, gap: u32) -> f64 {
        let dx = f64::from(gap.saturating_sub(1)) * self.r;
        2.0 * (dx * (-self.h).exp() / 2.0).asinh()
    }
}

/// Free-function form of [`Checkerboard::new`].
pub fn checkerboard_new(h: f64, ell: f64) -> Result<Checkerboard> {
    Checkerboard::new(h, ell)
}

/// Free-function form of [`Checkerboard::tile_of`].
pub fn tile_of(cb: &Checkerboard, p: HPoint) -> TileIndex {
    cb.tile_of(p)
}

/// Free-function form of [`Checkerboard::tile_diameter_bound`].
pub fn tile_diameter_bound(cb: &Checkerboard) -> f64 {
    cb.tile_diameter_bound()
}

/// `ceil(x)`, treating values within relative `REL_SLACK` of an integer as
/// that integer.
fn snapped_ceil(x: f64) -> f64 {
    let nearest = x.round();
    if (x - nearest).abs() <= REL_SLACK * x.abs().max(1.0) {
        nearest
    } else {
        x.ceil()
    }
}

/// Checkerboard coloring: tile `R_{n,k}` gets `(n mod N_u, k mod N_v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckerboardColoring {
    name: String,
    board: Checkerboard,
    strip_modulus: u64,
    column_modulus: u64,
}

impl CheckerboardColoring {
    pub fn new(board: Checkerboard, strip_modulus: u64, column_modulus: u64) -> Result<Self> {
        if strip_modulus == 0 || column_modulus == 0 {
            return Err(Error::InvalidParameter("moduli must be positive".into()));
        }
        Ok(CheckerboardColoring {
            name: format!(
                "checkerboard(h={}, ell={}, mod {}x{})",
                board.h, board.ell, strip_modulus, column_modulus
            ),
            board,
            strip_modulus,
            column_modulus,
        })
    }

    /// `(ln 3, d)`-checkerboard with `(n mod N, k mod 4)`,
    /// `N = ceil(d / ln 3) + 1`, for `d >= 3 ln 3`.
    pub fn high_curvature(d: f64) -> Result<Self> {
        if !(d.is_finite() && d >= HIGH_CURVATURE_MIN_D * (1.0 - REL_SLACK)) {
            return Err(Error::Precondition(format!(
                "high-curvature coloring needs d >= 3 ln 3 ≈ {HIGH_CURVATURE_MIN_D:.6}, got {d}"
            )));
        }
        let strips = snapped_ceil(d / LN_3) as u64 + 1;
        let mut c = CheckerboardColoring::new(Checkerboard::new(LN_3, d)?, strips, 4)?;
        c.name = format!("high-curvature(d={d})");
        Ok(c)
    }

    /// `(d/2, d/2)`-checkerboard with `(n mod 3, k mod 4)`, for
    /// `0 < d <= 2 ln(3/2)`.
    pub fn low_curvature(d: f64) -> Result<Self> {
        if !(d.is_finite() && d > 0.0 && d <= LOW_CURVATURE_MAX_D * (1.0 + REL_SLACK)) {
            return Err(Error::Precondition(format!(
                "low-curvature coloring needs 0 < d <= 2 ln(3/2) ≈ {LOW_CURVATURE_MAX_D:.6}, got {d}"
            )));
        }
        let mut c = CheckerboardColoring::new(Checkerboard::new(d / 2.0, d / 2.0)?, 3, 4)?;
        c.name = format!("low-curvature(d={d})");
        Ok(c)
    }

    pub fn board(&self) -> &Checkerboard {
        &self.board
    }

    pub fn label_of(&self, p: HPoint) -> ColorLabel {
        let t = self.board.tile_of(p);
        ColorLabel::new(
            t.n.rem_euclid(self.strip_modulus as i64),
            t.k.rem_euclid(self.column_modulus as i64),
        )
    }
}

impl ColorRule for CheckerboardColoring {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn domain(&self) -> Domain {
        Domain::HalfPlane
    }

    fn color_count(&self) -> ColorCount {
        ColorCount::Finite(self.strip_modulus * self.column_modulus)
    }

    fn moduli(&self) -> Option<(u64, u64)> {
        Some((self.strip_modulus, self.column_modulus))
    }

    fn label(&self, x: f64, y: f64) -> ColorLabel {
        self.label_of(HPoint::new_unchecked(x, y))
    }
}

/// Color of `p` under the high-curvature coloring for distance `d`.
pub fn color_high_curvature(d: f64, p: HPoint) -> Result<ColorLabel> {
    Ok(CheckerboardColoring::high_curvature(d)?.label_of(p))
}

/// Color of `p` under the low-curvature coloring for distance `d`.
pub fn color_low_curvature(d: f64, p: HPoint) -> Result<ColorLabel> {
    Ok(CheckerboardColoring::low_curvature(d)?.label_of(p))
}

/// Distance from a vertex of an equilateral triangle of side `d` to the
/// opposite side, `arcosh(cosh d / cosh(d/2))`.
pub fn equilateral_altitude(d: f64) -> f64 {
    if d > 40.0 {
        return (d.cosh() / (0.5 * d).cosh()).acosh();
    }
    // cosh d - cosh(d/2) = 2 sinh(3d/4) sinh(d/4)
    let s = ((0.75 * d).sinh() * (0.25 * d).sinh() / (0.5 * d).cosh()).sqrt();
    2.0 * s.asinh()
}

/// Distance between the two apexes `x, x'` of the equilateral triangles of
/// side `d` sharing an edge: `2 arcosh(cosh d / cosh(d/2))`. Always `> d`.
pub fn equilateral_apex_distance(d: f64) -> f64 {
    2.0 * equilateral_altitude(d)
}

/// Interior angle of an equilateral triangle of side `d`.
pub fn equilateral_angle(d: f64) -> f64 {
    // cos α = cosh d / (cosh d + 1), i.e. sin(α/2) = 1 / (2 cosh(d/2))
    2.0 * (0.5 / (0.5 * d).cosh()).asin()
}

/// Central angle at which two points on a circle of radius `radius` are
/// `chord` apart, or `None` if `chord > 2 radius` beyond rounding.
pub fn chord_angle(radius: f64, chord: f64) -> Option<f64> {
    // sinh(chord/2) = sinh(radius) sin(θ/2)
    let s = (0.5 * chord).sinh() / radius.sinh();
    if !s.is_finite() || s > 1.0 + ANGLE_SLACK {
        return None;
    }
    Some(2.0 * s.min(1.0).asin())
}

/// A finite distance-`d` witness: points and the edges all at distance `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spindle {
    pub d: f64,
    pub points: Vec<HPoint>,
    pub edges: Vec<(usize, usize)>,
}

/// Edge list of the Moser spindle on vertices
/// `A=0, B1=1, C1=2, D1=3, B2=4, C2=5, D2=6`.
pub const SPINDLE_EDGES: [(usize, usize); 11] = [
    (0, 1),
    (0, 2),
    (1, 2),
    (1, 3),
    (2, 3),
    (0, 4),
    (0, 5),
    (4, 5),
    (4, 6),
    (5, 6),
    (3, 6),
];

/// Moser spindle with all 11 edges of hyperbolic length `d`.
///
/// Two rhombi made of pairs of equilateral triangles are hinged at `A`; the
/// second is turned by `φ` so the far tips, each `2a` from `A`, are `d`
/// apart: `sinh(d/2) = sinh(2a) sin(φ/2)`, equivalently
/// `cos φ = (cosh²(2a) - cosh d) / sinh²(2a)`.
pub fn spindle_h2(d: f64) -> Result<Spindle> {
    if !(d.is_finite() && d > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "spindle needs d > 0, got {d}"
        )));
    }
    let apex = equilateral_apex_distance(d);
    let alpha = equilateral_angle(d);
    let phi = chord_angle(apex, d)
        .ok_or_else(|| Error::Numeric(format!("no hinge angle puts the spindle tips {d} apart")))?;
    let a = HPoint::new_unchecked(0.0, 1.0);
    let rhombus = |turn: f64| {
        [
            polar_point(a, d, turn - alpha / 2.0),
            polar_point(a, d, turn + alpha / 2.0),
            polar_point(a, apex, turn),
        ]
    };
    let mut points = vec![a];
    points.extend(rhombus(0.0));
    points.extend(rhombus(phi));
    Ok(Spindle {
        d,
        points,
        edges: SPINDLE_EDGES.to_vec(),
    })
}

/// Equally spaced points on a circle of radius `R = d(1+eps)/2`, as many as
/// keep every pairwise distance in `[d, d(1+eps)]`.
///
/// Returns an empty list when no admissible spacing exists.
pub fn circle_clique(d: f64, eps: f64) -> Vec<HPoint> {
    if !(d.is_finite() && eps.is_finite() && d > 0.0 && eps > 0.0) {
        return Vec::new();
    }
    let radius = 0.5 * d * (1.0 + eps);
    let Some(theta_min) = chord_angle(radius, d) else {
        return Vec::new();
    };
    let n = (2.0 * PI / theta_min).floor() as usize;
    let center = HPoint::new_unchecked(0.0, 1.0);
    (0..n)
        .map(|i| polar_point(center, radius, 2.0 * PI * i as f64 / n as f64))
        .collect()
}
