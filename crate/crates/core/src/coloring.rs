//! Types shared by every coloring rule.

use std::fmt;

/// A color: a pair of integers. Finite colorings keep each component inside
/// the moduli reported by [`ColorRule::moduli`]; unbounded colorings may use
/// any integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorLabel {
    pub u: i64,
    pub v: i64,
}

impl ColorLabel {
    pub const fn new(u: i64, v: i64) -> Self {
        ColorLabel { u, v }
    }
}

impl fmt::Display for ColorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.u, self.v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorCount {
    Finite(u64),
    /// Countably many labels; never counted.
    Unbounded,
}

impl ColorCount {
    pub fn finite(&self) -> Option<u64> {
        match *self {
            ColorCount::Finite(n) => Some(n),
            ColorCount::Unbounded => None,
        }
    }
}

impl fmt::Display for ColorCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColorCount::Finite(n) => write!(f, "{n}"),
            ColorCount::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// Which space a coloring's coordinates live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// `ℝ²` with some translation-invariant metric.
    Plane,
    /// Upper half-plane model of ℍ², `y > 0`.
    HalfPlane,
}

/// A deterministic, total rule assigning colors to points.
pub trait ColorRule: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn domain(&self) -> Domain;

    fn color_count(&self) -> ColorCount;

    /// Per-component moduli `(N_u, N_v)` for finite colorings.
    fn moduli(&self) -> Option<(u64, u64)>;

    /// Label of the point with coordinates `(x, y)` in [`Self::domain`].
    fn label(&self, x: f64, y: f64) -> ColorLabel;
}
