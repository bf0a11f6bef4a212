//! Adversarial statistical verification of colorings.
//!
//! Pairs are generated at an exact forbidden distance (by the ray solver in
//! the plane, by [`circle_point`] in ℍ²), re-measured, and checked for equal
//! labels. This can only falsify a coloring, never prove it proper.
//!
//! # Random streams
//!
//! Samples are split into streams of [`STREAM_LEN`]. Stream `i` is
//! Xoshiro256++ seeded from the master seed with SplitMix64 and then advanced
//! by `i` jumps of `2^128` steps. A uniform draw is `(next_u64 >> 11) * 2^-53`.
//! The first outputs for master seed 42 are:
//!
//! ```text
//! stream 0: 0xd0764d4f4476689f 0x519e4174576f3791 0xfbe07cfb0c24ed8c
//! stream 1: 0xc0b6f4be293b1ae5 0x5db3dd9683e7bb33 0x08d177efba75b08e
//! ```

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::io;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;

use crate::coloring::{ColorLabel, ColorRule, Domain};
use crate::error::{Error, Result};
use crate::hyperbolic::{circle_point, hyp_distance, Checkerboard, HPoint, TileIndex};
use crate::metric::{ray_level_range, DistanceSet, Point2, PseudoMetricExpr, RayOutcome};
use crate::parallel::with_pool;

/// Samples per random stream.
pub const STREAM_LEN: u64 = 1 << 16;

/// Default sample count of the verification suites.
pub const DEFAULT_SAMPLES: u64 = 1_000_000;

/// At most this many violations are kept in a report; the count is exact.
pub const MAX_KEPT_VIOLATIONS: usize = 100_000;

/// A seeded uniform generator for one stream.
#[derive(Debug, Clone)]
pub struct SampleRng(Xoshiro256PlusPlus);

impl SampleRng {
    /// Stream `index` of `master_seed`.
    pub fn stream(master_seed: u64, index: u64) -> Self {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(master_seed);
        for _ in 0..index {
            rng.jump();
        }
        SampleRng(rng)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}

/// Axis-aligned box `[x_min, x_max] x [y_min, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let w = Window {
            x_min,
            x_max,
            y_min,
            y_max,
        };
        let ok = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite())
            && x_min < x_max
            && y_min < y_max;
        if ok {
            Ok(w)
        } else {
            Err(Error::InvalidParameter(format!("degenerate window {w:?}")))
        }
    }

    /// `[-50, 50]²`.
    pub fn plane_default() -> Self {
        Window {
            x_min: -50.0,
            x_max: 50.0,
            y_min: -50.0,
            y_max: 50.0,
        }
    }

    /// `x ∈ [-50, 50]`, `y ∈ [e^-5, e^5]`.
    pub fn half_plane_default() -> Self {
        Window {
            x_min: -50.0,
            x_max: 50.0,
            y_min: (-5f64).exp(),
            y_max: 5f64.exp(),
        }
    }

    pub fn diagonal(&self) -> f64 {
        (self.x_max - self.x_min).hypot(self.y_max - self.y_min)
    }
}

/// Where pairs are drawn.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    /// `ℝ²` with a translation-invariant (pseudo)metric.
    Plane(PseudoMetricExpr),
    /// The half-plane model of ℍ².
    Hyperbolic,
}

impl Space {
    pub fn domain(&self) -> Domain {
        match self {
            Space::Plane(_) => Domain::Plane,
            Space::Hyperbolic => Domain::HalfPlane,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSpec {
    pub space: Space,
    pub target: DistanceSet,
    pub window: Window,
    pub samples: u64,
    pub master_seed: u64,
}

impl SampleSpec {
    /// Sampling spec with the default window of `space`.
    pub fn new(space: Space, target: DistanceSet, samples: u64, master_seed: u64) -> Self {
        let window = match space {
            Space::Plane(_) => Window::plane_default(),
            Space::Hyperbolic => Window::half_plane_default(),
        };
        SampleSpec {
            space,
            target,
            window,
            samples,
            master_seed,
        }
    }

    pub fn with_window(mut self, window: Window) -> Self {
        self.window = window;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidParameter("samples must be >= 1".into()));
        }
        let w = self.window;
        Window::new(w.x_min, w.x_max, w.y_min, w.y_max)?;
        if self.space == Space::Hyperbolic && w.y_min <= 0.0 {
            return Err(Error::InvalidParameter(
                "hyperbolic window must lie in y > 0".into(),
            ));
        }
        if let Space::Plane(e) = &self.space {
            e.validate()?;
        }
        Ok(())
    }

    pub fn streams(&self) -> u64 {
        self.samples.div_ceil(STREAM_LEN)
    }
}

/// A realized pair and its re-measured distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledPair {
    pub p: (f64, f64),
    pub q: (f64, f64),
    pub distance: f64,
}

/// Draws one pair at a distance in the target set.
///
/// `Ok(None)` means the ray solver found no admissible point on the drawn
/// ray. An `Err` means a pair failed re-measurement, which is a bug.
pub fn sample_pair(spec: &SampleSpec, rng: &mut SampleRng) -> Result<Option<SampledPair>> {
    let w = spec.window;
    let (a, b) = (spec.target.lower(), spec.target.upper());
    let pair = match &spec.space {
        Space::Plane(expr) => {
            let p = Point2::new(
                rng.uniform_in(w.x_min, w.x_max),
                rng.uniform_in(w.y_min, w.y_max),
            );
            let theta = rng.uniform_in(0.0, TAU);
            let v = Point2::new(theta.cos(), theta.sin());
            let s = rng.uniform();
            let (t_lo, t_hi) = match ray_level_range(expr, p, v, &spec.target, w.diagonal()) {
                RayOutcome::Hit { t_lo, t_hi } => (t_lo, t_hi),
                RayOutcome::Unreachable | RayOutcome::NotConverged => return Ok(None),
            };
            let q = p + v.scale(t_lo + (t_hi - t_lo) * s);
            SampledPair {
                p: (p.x1, p.x2),
                q: (q.x1, q.x2),
                distance: expr.eval(p, q),
            }
        }
        Space::Hyperbolic => {
            let p = HPoint {
                x: rng.uniform_in(w.x_min, w.x_max),
                y: rng.uniform_in(w.y_min.ln(), w.y_max.ln()).exp(),
            };
            let theta = rng.uniform_in(0.0, TAU);
            let r = if b > a { rng.uniform_in(a, b) } else { a };
            let q = circle_point(p, r, theta);
            SampledPair {
                p: (p.x, p.y),
                q: (q.x, q.y),
                distance: hyp_distance(p, q),
            }
        }
    };
    if !spec.target.contains(pair.distance) {
        return Err(Error::Sampler(format!(
            "pair {:?} -> {:?} measures {} outside {}",
            pair.p, pair.q, pair.distance, spec.target
        )));
    }
    Ok(Some(pair))
}

/// A monochromatic pair at a forbidden distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub stream: u64,
    pub index: u64,
    pub pair: SampledPair,
    pub label: ColorLabel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub coloring: String,
    pub target: DistanceSet,
    pub samples_attempted: u64,
    pub samples_realized: u64,
    /// Total number of violations found.
    pub violation_count: u64,
    /// The first [`MAX_KEPT_VIOLATIONS`] violations, in stream order.
    pub violations: Vec<Violation>,
    pub rng_streams_used: u64,
    pub master_seed: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "coloring={} target={} seed={} streams={} attempted={} realized={} violations={} result={}",
            self.coloring,
            self.target,
            self.master_seed,
            self.rng_streams_used,
            self.samples_attempted,
            self.samples_realized,
            self.violation_count,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }

    /// One violation per row, then the summary as a `#` line.
    pub fn write_csv(&self, out: &mut (impl io::Write + ?Sized)) -> io::Result<()> {
        let mut s = String::from("stream,index,px,py,qx,qy,distance,label\n");
        for v in &self.violations {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                v.stream,
                v.index,
                v.pair.p.0,
                v.pair.p.1,
                v.pair.q.0,
                v.pair.q.1,
                v.pair.distance,
                v.label
            );
        }
        let _ = writeln!(s, "# {}", self.summary());
        out.write_all(s.as_bytes())
    }
}

struct StreamResult<T> {
    attempted: u64,
    realized: u64,
    found: Vec<T>,
    count: u64,
}

/// Runs `per_sample` over all streams in parallel and returns the per-stream
/// results in stream order.
fn run_streams<T: Send>(
    samples: u64,
    seed: u64,
    per_sample: impl Fn(&mut SampleRng, u64, u64) -> Result<Option<Option<T>>> + Sync,
) -> Result<Vec<StreamResult<T>>> {
    let streams = samples.div_ceil(STREAM_LEN);
    with_pool(|| {
        (0..streams)
            .into_par_iter()
            .map(|s| {
                let mut rng = SampleRng::stream(seed, s);
                let end = ((s + 1) * STREAM_LEN).min(samples);
                let mut r = StreamResult {
                    attempted: 0,
                    realized: 0,
                    found: Vec::new(),
                    count: 0,
                };
                for i in s * STREAM_LEN..end {
                    r.attempted += 1;
                    match per_sample(&mut rng, s, i)? {
                        None => {}
                        Some(hit) => {
                            r.realized += 1;
                            if let Some(v) = hit {
                                r.count += 1;
                                if r.found.len() < MAX_KEPT_VIOLATIONS {
                                    r.found.push(v);
                                }
                            }
                        }
                    }
                }
                Ok(r)
            })
            .collect()
    })
}

/// Checks `coloring` on `spec.samples` pairs drawn at forbidden distances.
pub fn verify_statistical(
    coloring: &dyn ColorRule,
    spec: &SampleSpec,
) -> Result<VerificationReport> {
    spec.validate()?;
    if coloring.domain() != spec.space.domain() {
        return Err(Error::DomainMismatch);
    }
    let results = run_streams(spec.samples, spec.master_seed, |rng, stream, index| {
        let Some(pair) = sample_pair(spec, rng)? else {
            return Ok(None);
        };
        let lp = coloring.label(pair.p.0, pair.p.1);
        let lq = coloring.label(pair.q.0, pair.q.1);
        Ok(Some((lp == lq).then_some(Violation {
            stream,
            index,
            pair,
            label: lp,
        })))
    })?;
    let mut report = VerificationReport {
        coloring: coloring.name(),
        target: spec.target,
        samples_attempted: 0,
        samples_realized: 0,
        violation_count: 0,
        violations: Vec::new(),
        rng_streams_used: spec.streams(),
        master_seed: spec.master_seed,
    };
    for r in results {
        report.samples_attempted += r.attempted;
        report.samples_realized += r.realized;
        report.violation_count += r.count;
        let room = MAX_KEPT_VIOLATIONS - report.violations.len();
        report.violations.extend(r.found.into_iter().take(room));
    }
    Ok(report)
}

/// Result of [`verify_tile_diameter`].
#[derive(Debug, Clone, PartialEq)]
pub struct TileDiameterReport {
    pub samples: u64,
    pub bound: f64,
    pub max_distance: f64,
    /// Same-tile pairs at distance `>= bound`.
    pub violation_count: u64,
    pub violations: Vec<(TileIndex, HPoint, HPoint, f64)>,
}

impl TileDiameterReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Fraction of a tile side kept between a snapped point and an open edge,
/// large enough that the distance to the far corner stays resolvable.
const OPEN_EDGE_GAP: f64 = 1.0 / (1u64 << 30) as f64;

/// Coordinate in `[lo, hi)`: uniform, or snapped to the closed end or next
/// to the open end with probability 1/4 each, to probe the tile corners.
fn snapped(rng: &mut SampleRng, lo: f64, hi: f64, log_scale: bool) -> f64 {
    let top = (hi - (hi - lo) * OPEN_EDGE_GAP).min(hi.next_down()).max(lo);
    let u = rng.uniform();
    if u < 0.25 {
        lo
    } else if u < 0.5 {
        top
    } else if log_scale {
        rng.uniform_in(lo.ln(), hi.ln()).exp().clamp(lo, top)
    } else {
        rng.uniform_in(lo, hi).clamp(lo, top)
    }
}

/// Samples pairs of points inside one tile and compares their distance
/// with the strict bound [`Checkerboard::tile_diameter_bound`].
pub fn verify_tile_diameter(
    cb: &Checkerboard,
    samples: u64,
    seed: u64,
) -> Result<TileDiameterReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    let w = Window::half_plane_default();
    let bound = cb.tile_diameter_bound();
    let results = run_streams(samples, seed, |rng, _, _| {
        let anchor = HPoint {
            x: rng.uniform_in(w.x_min, w.x_max),
            y: rng.uniform_in(w.y_min.ln(), w.y_max.ln()).exp(),
        };
        let tile = cb.tile_of(anchor);
        let (y0, y1) = (cb.strip_floor(tile.n), cb.strip_floor(tile.n + 1));
        let width = cb.tile_width(tile.n);
        let (x0, x1) = (tile.k as f64 * width, (tile.k + 1) as f64 * width);
        let mut point = || HPoint {
            x: snapped(rng, x0, x1, false),
            y: snapped(rng, y0, y1, true),
        };
        let (p, q) = (point(), point());
        if cb.tile_of(p) != tile || cb.tile_of(q) != tile {
            return Err(Error::Sampler(format!("tile sample left tile {tile:?}")));
        }
        let d = hyp_distance(p, q);
        Ok(Some(Some((tile, p, q, d))))
    })?;
    let mut report = TileDiameterReport {
        samples,
        bound,
        max_distance: 0.0,
        violation_count: 0,
        violations: Vec::new(),
    };
    for r in results {
        for (tile, p, q, d) in r.found {
            report.max_distance = report.max_distance.max(d);
            if d >= bound {
                report.violation_count += 1;
                if report.violations.len() < MAX_KEPT_VIOLATIONS {
                    report.violations.push((tile, p, q, d));
                }
            }
        }
    }
    Ok(report)
}
