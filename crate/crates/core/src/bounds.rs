//! Tables of constructive lower and upper bounds on chromatic numbers.
//!
//! Rows never extrapolate: where no construction applies the upper bound is
//! left blank and the `note` column says why.

use std::fmt::Write as _;
use std::io;
use std::str::FromStr;

use crate::coloring::ColorRule;
use crate::error::{Error, Result};
use crate::hyperbolic::{CheckerboardColoring, LOW_CURVATURE_SAFE_D};
use crate::planar::{euclid_packing_clique, GridModColoring};

/// Most rows a single table may have.
pub const MAX_ROWS: usize = 100_000;

/// Hexagonal packing density `π/√12`.
pub const HEX_DENSITY: f64 = 0.906_899_682_117_108_9;

/// Reference growth constant `4/3` for the upper bound.
pub const UPPER_REFERENCE: f64 = 4.0 / 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `χ(𝔼², [1, d])`.
    EuclidInterval,
    /// `χ(ℍ², {d})`.
    Hyperbolic,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclid-interval" => Ok(Family::EuclidInterval),
            "hyperbolic" => Ok(Family::Hyperbolic),
            _ => Err(Error::InvalidParameter(format!(
                "unknown family '{s}' (expected euclid-interval or hyperbolic)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub d: f64,
    pub lower: u64,
    pub lower_kind: &'static str,
    pub upper: Option<u64>,
    pub upper_kind: &'static str,
    pub note: &'static str,
}

pub fn bounds_row(family: Family, d: f64) -> Result<BoundsRow> {
    match family {
        Family::EuclidInterval => {
            if !(d.is_finite() && d > 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "euclid-interval needs d > 1, got {d}"
                )));
            }
            let clique = euclid_packing_clique(d)?;
            let grid = GridModColoring::for_euclid_interval(d)?;
            Ok(BoundsRow {
                d,
                lower: clique.len() as u64,
                lower_kind: "hex-packing-clique",
                upper: grid.color_count().finite(),
                upper_kind: "grid-mod-coloring",
                note: "",
            })
        }
        Family::Hyperbolic => {
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "hyperbolic needs d > 0, got {d}"
                )));
            }
            let mut row = BoundsRow {
                d,
                lower: 4,
                lower_kind: "moser-spindle",
                upper: None,
                upper_kind: "",
                note: "no theorem applies",
            };
            if let Ok(c) = CheckerboardColoring::low_curvature(d) {
                row.upper = c.color_count().finite();
                row.upper_kind = "low-curvature-checkerboard";
                row.note = if d > LOW_CURVATURE_SAFE_D {
                    "sampling finds same-strip monochromatic pairs above d=0.7737"
                } else {
                    ""
                };
            } else if let Ok(c) = CheckerboardColoring::high_curvature(d) {
                row.upper = c.color_count().finite();
                row.upper_kind = "high-curvature-checkerboard";
                row.note = "";
            }
            Ok(row)
        }
    }
}

/// Rows at `d_min, d_min + step, ...` up to `d_max`.
pub fn bounds_table(family: Family, d_min: f64, d_max: f64, step: f64) -> Result<Vec<BoundsRow>> {
    let finite = d_min.is_finite() && d_max.is_finite() && step.is_finite();
    if !finite || step <= 0.0 || d_min > d_max {
        return Err(Error::InvalidParameter(format!(
            "bad range d-min={d_min}, d-max={d_max}, step={step}"
        )));
    }
    let count = ((d_max - d_min) / step * (1.0 + 1e-12) + 1e-9).floor() as usize + 1;
    if count > MAX_ROWS {
        return Err(Error::InvalidParameter(format!(
            "range has {count} rows, limit {MAX_ROWS}"
        )));
    }
    (0..count)
        .map(|i| {
            let d = ((d_min + i as f64 * step) * 1e12).round() / 1e12;
            bounds_row(family, d)
        })
        .collect()
}

pub fn write_bounds_csv(rows: &[BoundsRow], out: &mut (impl io::Write + ?Sized)) -> io::Result<()> {
    let mut s = String::from("d,lower,lower_kind,upper,upper_kind,note\n");
    for r in rows {
        let upper = r.upper.map(|u| u.to_string()).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            r.d, r.lower, r.lower_kind, upper, r.upper_kind, r.note
        );
    }
    out.write_all(s.as_bytes())
}

/// A static line plot of the table; reference curves `π/√12 d²` and
/// `4/3 d²` accompany the Euclidean family.
pub fn bounds_svg(family: Family, rows: &[BoundsRow]) -> String {
    let (w, h, m) = (640.0, 400.0, 50.0);
    let d_lo = rows.first().map_or(0.0, |r| r.d);
    let d_hi = rows.last().map_or(1.0, |r| r.d).max(d_lo + 1e-9);
    let refs: Vec<(&str, f64)> = match family {
        Family::EuclidInterval => vec![("#888", HEX_DENSITY), ("#bbb", UPPER_REFERENCE)],
        Family::Hyperbolic => Vec::new(),
    };
    let mut y_hi = rows
        .iter()
        .map(|r| r.upper.unwrap_or(0).max(r.lower) as f64)
        .fold(1.0, f64::max);
    for &(_, c) in &refs {
        y_hi = y_hi.max(c * d_hi * d_hi);
    }
    let px = |d: f64| m + (d - d_lo) / (d_hi - d_lo) * (w - 2.0 * m);
    let py = |v: f64| h - m - v / y_hi * (h - 2.0 * m);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    );
    let _ = writeln!(
        s,
        "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n<line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>",
        b = h - m,
        r = w - m
    );
    let _ = writeln!(
        s,
        "<text x=\"{m}\" y=\"{}\" font-size=\"12\">d = {d_lo} .. {d_hi}, colors 0 .. {y_hi:.0}</text>",
        h - 15.0
    );
    let polyline = |s: &mut String, pts: &[(f64, f64)], style: &str| {
        if pts.is_empty() {
            return;
        }
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            s,
            "<polyline fill=\"none\" {style} points=\"{}\"/>",
            coords.join(" ")
        );
    };
    for &(color, c) in &refs {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.d, c * r.d * r.d)).collect();
        polyline(
            &mut s,
            &pts,
            &format!("stroke=\"{color}\" stroke-dasharray=\"4 3\""),
        );
    }
    let lower: Vec<(f64, f64)> = rows.iter().map(|r| (r.d, r.lower as f64)).collect();
    polyline(&mut s, &lower, "stroke=\"#1f5fbf\"");
    let mut segment = Vec::new();
    for r in rows {
        match r.upper {
            Some(u) => segment.push((r.d, u as f64)),
            None => {
                polyline(&mut s, &segment, "stroke=\"#bf1f1f\"");
                segment.clear();
            }
        }
    }
    polyline(&mut s, &segment, "stroke=\"#bf1f1f\"");
    s.push_str("</svg>\n");
    s
}
