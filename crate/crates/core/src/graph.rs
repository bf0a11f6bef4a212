//! Finite distance graphs and exact solvers on them.
//!
//! Graphs are small (a few hundred vertices at most), so adjacency is a
//! dense bitset matrix. Solvers count search nodes instead of wall-clock
//! time, so every result is reproducible.

use std::fmt::Write as _;
use std::io;

use crate::coloring::{ColorLabel, ColorRule, Domain};
use crate::error::{Error, Result};
use crate::hyperbolic::{hyp_distance, HPoint, SPINDLE_EDGES};
use crate::metric::{DistanceSet, Point2, PseudoMetricExpr};

/// Default widening of the distance set when deciding adjacency.
pub const DEFAULT_EDGE_TOL: f64 = 1e-9;

/// Largest graph accepted by the exact solvers unless overridden.
pub const DEFAULT_VERTEX_CAP: usize = 200;

/// Default search-node budget for the exact solvers.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

type Row = Vec<u64>;

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

fn bit(row: &[u64], i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(row: &mut [u64], i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

fn clear_bit(row: &mut [u64], i: usize) {
    row[i / 64] &= !(1 << (i % 64));
}

fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

fn first_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .position(|&w| w != 0)
        .map(|k| k * 64 + row[k].trailing_zeros() as usize)
}

fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * 64 + t)
        })
    })
}

/// Vertex coordinates of a graph.
#[derive(Debug, Clone, PartialEq)]
pub enum PointSet {
    Plane(Vec<Point2>),
    HalfPlane(Vec<HPoint>),
    /// `n` vertices without coordinates.
    Abstract(usize),
}

impl PointSet {
    pub fn len(&self) -> usize {
        match self {
            PointSet::Plane(p) => p.len(),
            PointSet::HalfPlane(p) => p.len(),
            PointSet::Abstract(n) => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Raw `(x, y)` of vertex `i`, if the set has coordinates.
    pub fn coords(&self, i: usize) -> Option<(f64, f64)> {
        match self {
            PointSet::Plane(p) => Some((p[i].x1, p[i].x2)),
            PointSet::HalfPlane(p) => Some((p[i].x, p[i].y)),
            PointSet::Abstract(_) => None,
        }
    }

    fn find_duplicate(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n).find_map(|i| {
            let a = self.coords(i)?;
            (i + 1..n)
                .find(|&j| self.coords(j) == Some(a))
                .map(|j| (i, j))
        })
    }
}

/// The distance used to build a graph.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphMetric {
    Plane(PseudoMetricExpr),
    Hyperbolic,
}

/// How a graph's edges were decided.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Metric {
        metric: GraphMetric,
        target: DistanceSet,
    },
    FiniteK(FiniteK),
    /// Edges listed explicitly, e.g. read from a file.
    Explicit,
}

/// A finite simple graph, optionally with vertex coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoGraph {
    points: PointSet,
    adj: Vec<Row>,
    edge_count: usize,
    provenance: Provenance,
    tol: f64,
}

impl GeoGraph {
    fn empty(points: PointSet, provenance: Provenance, tol: f64) -> Self {
        let n = points.len();
        GeoGraph {
            adj: vec![vec![0; words(n)]; n],
            points,
            edge_count: 0,
            provenance,
            tol,
        }
    }

    fn add_edge_unchecked(&mut self, i: usize, j: usize) {
        if !bit(&self.adj[i], j) {
            set_bit(&mut self.adj[i], j);
            set_bit(&mut self.adj[j], i);
            self.edge_count += 1;
        }
    }

    /// Graph with explicit edges. Repeated edges are merged.
    pub fn from_edges(points: PointSet, edges: &[(usize, usize)]) -> Result<Self> {
        let n = points.len();
        let mut g = GeoGraph::empty(points, Provenance::Explicit, 0.0);
        for &(i, j) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::InvalidParameter(format!(
                    "edge ({i}, {j}) is not valid on {n} vertices"
                )));
            }
            g.add_edge_unchecked(i, j);
        }
        Ok(g)
    }

    /// `K_n` without coordinates.
    pub fn complete(n: usize) -> Self {
        let mut g = GeoGraph::empty(PointSet::Abstract(n), Provenance::Explicit, 0.0);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge_unchecked(i, j);
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        bit(&self.adj[i], j)
    }

    pub fn degree(&self, i: usize) -> usize {
        count(&self.adj[i])
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        ones(&self.adj[i])
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| {
                self.neighbors(i)
                    .filter(move |&j| j > i)
                    .map(move |j| (i, j))
            })
            .collect()
    }

    /// Whether `vertices` are pairwise adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(a, &i)| vertices[a + 1..].iter().all(|&j| self.has_edge(i, j)))
    }

    /// The subgraph induced by `keep`, renumbered in the given order.
    pub fn induced(&self, keep: &[usize]) -> Self {
        let points = match &self.points {
            PointSet::Plane(p) => PointSet::Plane(keep.iter().map(|&i| p[i]).collect()),
            PointSet::HalfPlane(p) => PointSet::HalfPlane(keep.iter().map(|&i| p[i]).collect()),
            PointSet::Abstract(_) => PointSet::Abstract(keep.len()),
        };
        let mut g = GeoGraph::empty(points, self.provenance.clone(), self.tol);
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                if self.has_edge(i, j) {
                    g.add_edge_unchecked(a, b);
                }
            }
        }
        g
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "tolerance must be >= 0, got {tol}"
        )))
    }
}

/// Distance graph: `i ~ j` iff the distance lies in
/// `[target.lower() - tol, target.upper() + tol]`.
pub fn build_graph(
    points: PointSet,
    metric: GraphMetric,
    target: DistanceSet,
    tol: f64,
) -> Result<GeoGraph> {
    check_tol(tol)?;
    if let Some((i, j)) = points.find_duplicate() {
        return Err(Error::DuplicatePoint(i, j));
    }
    let (lo, hi) = (target.lower() - tol, target.upper() + tol);
    let dist: Box<dyn Fn(usize, usize) -> f64 + '_> = match (&metric, &points) {
        (GraphMetric::Plane(e), PointSet::Plane(p)) => Box::new(move |i, j| e.eval(p[i], p[j])),
        (GraphMetric::Hyperbolic, PointSet::HalfPlane(p)) => {
            Box::new(move |i, j| hyp_distance(p[i], p[j]))
        }
        _ => return Err(Error::DomainMismatch),
    };
    let n = points.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = dist(i, j);
            if d >= lo && d <= hi {
                edges.push((i, j));
            }
        }
    }
    drop(dist);
    let mut g = GeoGraph::empty(points, Provenance::Metric { metric, target }, tol);
    for (i, j) in edges {
        g.add_edge_unchecked(i, j);
    }
    Ok(g)
}

/// A finite symmetric set of nonzero difference vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteK {
    vectors: Vec<Point2>,
}

/// Two vectors of `K` closer than this are treated as equal.
const K_MATCH_TOL: f64 = 1e-12;

impl FiniteK {
    pub fn new(vectors: Vec<Point2>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidDifferenceSet("K is empty".into()));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.x1 == 0.0 && v.x2 == 0.0 {
                return Err(Error::InvalidDifferenceSet(format!("vector {i} is zero")));
            }
            if vectors[i + 1..]
                .iter()
                .any(|w| (*v - *w).norm() <= K_MATCH_TOL)
            {
                return Err(Error::InvalidDifferenceSet(format!(
                    "vector {i} is repeated"
                )));
            }
            if !vectors.iter().any(|w| (*v + *w).norm() <= K_MATCH_TOL) {
                return Err(Error::InvalidDifferenceSet(format!(
                    "vector {i} = ({}, {}) has no negative in K",
                    v.x1, v.x2
                )));
            }
        }
        Ok(FiniteK { vectors })
    }

    pub fn vectors(&self) -> &[Point2] {
        &self.vectors
    }

    /// `2k`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// `i ~ j` iff `points[j] - points[i]` is within `tol` of some vector of `K`.
pub fn build_graph_finite_k(points: &[Point2], k: &FiniteK, tol: f64) -> Result<GeoGraph> {
    check_tol(tol)?;
    let set = PointSet::Plane(points.to_vec());
    if let Some((i, j)) = set.find_duplicate() {
        return Err(Error::DuplicatePoint(i, j));
    }
    let mut g = GeoGraph::empty(set, Provenance::FiniteK(k.clone()), tol);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let diff = points[j] - points[i];
            if k.vectors.iter().any(|&v| (diff - v).norm() <= tol) {
                g.add_edge_unchecked(i, j);
            }
        }
    }
    Ok(g)
}

/// Unit-distance Moser spindle in the Euclidean plane, vertex order as in
/// [`SPINDLE_EDGES`].
pub fn moser_spindle_e2() -> (Vec<Point2>, Vec<(usize, usize)>) {
    let apex = 3f64.sqrt();
    let phi = 2.0 * (0.5 / apex).asin();
    let at = |r: f64, a: f64| Point2::new(r * a.sin(), r * a.cos());
    let sixth = std::f64::consts::PI / 6.0;
    let points = vec![
        Point2::ORIGIN,
        at(1.0, -sixth),
        at(1.0, sixth),
        at(apex, 0.0),
        at(1.0, phi - sixth),
        at(1.0, phi + sixth),
        at(apex, phi),
    ];
    (points, SPINDLE_EDGES.to_vec())
}

/// Limits for the exact solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveBudget {
    pub nodes: u64,
    pub vertex_cap: usize,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            nodes: DEFAULT_NODE_BUDGET,
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }
}

impl SolveBudget {
    pub fn nodes(nodes: u64) -> Self {
        SolveBudget {
            nodes,
            ..Self::default()
        }
    }

    fn check(&self, g: &GeoGraph) -> Result<()> {
        if g.len() > self.vertex_cap {
            Err(Error::TooManyVertices {
                vertices: g.len(),
                cap: self.vertex_cap,
            })
        } else {
            Ok(())
        }
    }
}

/// Result of [`max_clique`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    /// Pairwise adjacent vertices, ascending.
    pub vertices: Vec<usize>,
    /// `false` if the budget ran out; `vertices` is then only a lower bound.
    pub exact: bool,
    pub nodes: u64,
}

struct CliqueSearch<'a> {
    g: &'a GeoGraph,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl CliqueSearch<'_> {
    /// Greedy sequential coloring of `p`; returns vertices in color order
    /// with the color count reached at each.
    fn color_sort(&self, p: &[u64]) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(count(p));
        let mut uncolored = p.to_vec();
        let mut k = 0;
        while first_bit(&uncolored).is_some() {
            k += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first_bit(&q) {
                clear_bit(&mut uncolored, v);
                clear_bit(&mut q, v);
                for (w, a) in q.iter_mut().zip(&self.g.adj[v]) {
                    *w &= !a;
                }
                out.push((v, k));
            }
        }
        out
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut p: Row) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let order = self.color_sort(&p);
        for &(v, bound) in order.iter().rev() {
            if current.len() + bound <= self.best.len() || self.aborted {
                return;
            }
            current.push(v);
            let next: Row = p.iter().zip(&self.g.adj[v]).map(|(a, b)| a & b).collect();
            if first_bit(&next).is_none() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            clear_bit(&mut p, v);
        }
    }
}

/// Maximum clique by branch and bound with a greedy-coloring bound.
pub fn max_clique(g: &GeoGraph, budget: SolveBudget) -> Result<CliqueResult> {
    budget.check(g)?;
    let n = g.len();
    let mut s = CliqueSearch {
        g,
        best: Vec::new(),
        nodes: 0,
        budget: budget.nodes,
        aborted: false,
    };
    if n > 0 {
        s.best = vec![0];
        let mut all = vec![0; words(n)];
        for i in 0..n {
            set_bit(&mut all, i);
        }
        s.expand(&mut Vec::new(), all);
    }
    let mut vertices = s.best;
    vertices.sort_unstable();
    Ok(CliqueResult {
        vertices,
        exact: !s.aborted,
        nodes: s.nodes,
    })
}

/// Proof object for a chromatic number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticCertificate {
    /// Colors used by `coloring`; equal to χ when `exact`.
    pub chi: usize,
    /// Proper coloring with colors `0..chi`.
    pub coloring: Vec<usize>,
    /// A clique, certifying `χ >= clique_lb.len()`.
    pub clique_lb: Vec<usize>,
    /// Best proven lower bound; equals `chi` when `exact`.
    pub lower_bound: usize,
    pub exact: bool,
    pub nodes: u64,
}

const UNCOLORED: usize = usize::MAX;

struct ColorSearch<'a> {
    g: &'a GeoGraph,
    color: Vec<usize>,
    /// `seen[v * width + c]`: neighbours of `v` holding color `c`.
    seen: Vec<u32>,
    sat: Vec<usize>,
    width: usize,
    best: Vec<usize>,
    best_k: usize,
    floor: usize,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl ColorSearch<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        for u in ones(&self.g.adj[v]) {
            let s = &mut self.seen[u * self.width + c];
            if *s == 0 {
                self.sat[u] += 1;
            }
            *s += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        self.color[v] = UNCOLORED;
        for u in ones(&self.g.adj[v]) {
            let s = &mut self.seen[u * self.width + c];
            *s -= 1;
            if *s == 0 {
                self.sat[u] -= 1;
            }
        }
    }

    /// Uncolored vertex of highest saturation, lowest index on ties.
    fn pick(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for v in 0..self.color.len() {
            if self.color[v] == UNCOLORED && best.is_none_or(|b| self.sat[v] > self.sat[b]) {
                best = Some(v);
            }
        }
        best
    }

    fn dfs(&mut self, used: usize) {
        if self.aborted || self.best_k == self.floor || used >= self.best_k {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let Some(v) = self.pick() else {
            if used < self.best_k {
                self.best_k = used;
                self.best = self.color.clone();
            }
            return;
        };
        for c in 0..=used {
            if c + 1 >= self.best_k {
                break;
            }
            if c < used && self.seen[v * self.width + c] > 0 {
                continue;
            }
            self.assign(v, c);
            self.dfs(used.max(c + 1));
            self.unassign(v);
            if self.aborted || self.best_k == self.floor {
                return;
            }
        }
    }
}

/// Greedy DSATUR coloring with the same vertex-selection rule as the exact
/// search.
pub fn dsatur_greedy(g: &GeoGraph) -> Vec<usize> {
    let n = g.len();
    let mut s = new_color_search(g, n.max(1), 0, 0);
    for _ in 0..n {
        let v = s.pick().expect("uncolored vertex");
        let c = (0..)
            .find(|&c| s.seen[v * s.width + c] == 0)
            .expect("free color");
        s.assign(v, c);
    }
    s.color
}

fn new_color_search(g: &GeoGraph, width: usize, floor: usize, budget: u64) -> ColorSearch<'_> {
    let n = g.len();
    ColorSearch {
        g,
        color: vec![UNCOLORED; n],
        seen: vec![0; n * width],
        sat: vec![0; n],
        width,
        best: Vec::new(),
        best_k: 0,
        floor,
        nodes: 0,
        budget,
        aborted: false,
    }
}

fn colors_used(coloring: &[usize]) -> usize {
    coloring.iter().map(|&c| c + 1).max().unwrap_or(0)
}

/// Exact chromatic number by DSATUR branch and bound, seeded with a
/// maximum clique (lower bound) and a greedy DSATUR coloring (upper bound).
///
/// The budget is shared between the clique search and the coloring search.
/// On exhaustion the certificate is flagged inexact and reports the best
/// coloring and the clique bound.
pub fn chromatic_number_exact(g: &GeoGraph, budget: SolveBudget) -> Result<ChromaticCertificate> {
    budget.check(g)?;
    let clique = max_clique(g, budget)?;
    let upper = dsatur_greedy(g);
    let mut best_k = colors_used(&upper);
    let floor = clique.vertices.len();
    let remaining = budget.nodes.saturating_sub(clique.nodes);
    let mut s = new_color_search(g, best_k.max(1), floor, remaining);
    s.best = upper;
    s.best_k = best_k;
    if best_k > floor {
        for (c, &v) in clique.vertices.iter().enumerate() {
            s.assign(v, c);
        }
        s.dfs(floor);
        best_k = s.best_k;
    }
    let exact = clique.exact && !s.aborted;
    Ok(ChromaticCertificate {
        chi: best_k,
        coloring: s.best,
        lower_bound: if exact { best_k } else { floor },
        clique_lb: clique.vertices,
        exact,
        nodes: clique.nodes + s.nodes,
    })
}

/// Vertices in smallest-last order (the last vertex removed first) and the
/// degeneracy of the graph.
pub fn smallest_last_order(g: &GeoGraph) -> (Vec<usize>, usize) {
    let n = g.len();
    let mut deg: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertex left");
        degeneracy = degeneracy.max(deg[v]);
        removed[v] = true;
        for u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
        order.push(v);
    }
    order.reverse();
    (order, degeneracy)
}

pub fn degeneracy(g: &GeoGraph) -> usize {
    smallest_last_order(g).1
}

/// Colors used by greedy coloring in smallest-last order; never more than
/// `degeneracy(g) + 1`.
pub fn greedy_degeneracy_bound(g: &GeoGraph) -> usize {
    let (order, _) = smallest_last_order(g);
    let mut color = vec![UNCOLORED; g.len()];
    for v in order {
        let taken: Vec<usize> = g.neighbors(v).map(|u| color[u]).collect();
        color[v] = (0..).find(|c| !taken.contains(c)).expect("free color");
    }
    colors_used(&color)
}

/// Monochromatic edges of `colors`; empty iff the coloring is proper.
pub fn verify_coloring<T: PartialEq>(g: &GeoGraph, colors: &[T]) -> Result<Vec<(usize, usize)>> {
    if colors.len() != g.len() {
        return Err(Error::InvalidParameter(format!(
            "{} colors for {} vertices",
            colors.len(),
            g.len()
        )));
    }
    Ok(g.edges()
        .into_iter()
        .filter(|&(i, j)| colors[i] == colors[j])
        .collect())
}

/// Labels of a coloring rule at the graph's vertices.
pub fn rule_labels(g: &GeoGraph, rule: &dyn ColorRule) -> Result<Vec<ColorLabel>> {
    let domain = match g.points() {
        PointSet::Plane(_) => Domain::Plane,
        PointSet::HalfPlane(_) => Domain::HalfPlane,
        PointSet::Abstract(_) => return Err(Error::DomainMismatch),
    };
    if domain != rule.domain() {
        return Err(Error::DomainMismatch);
    }
    Ok((0..g.len())
        .map(|i| {
            let (x, y) = g.points().coords(i).expect("coordinates");
            rule.label(x, y)
        })
        .collect())
}

/// Writes `n m`, then point lines (when the graph has coordinates), then
/// edge lines.
pub fn write_graph(g: &GeoGraph, out: &mut (impl io::Write + ?Sized)) -> io::Result<()> {
    let mut s = format!("{} {}\n", g.len(), g.edge_count());
    for i in 0..g.len() {
        if let Some((x, y)) = g.points().coords(i) {
            let _ = writeln!(s, "{x} {y}");
        }
    }
    for (i, j) in g.edges() {
        let _ = writeln!(s, "{i} {j}");
    }
    out.write_all(s.as_bytes())
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn fields<T: std::str::FromStr>(line: usize, text: &str, want: usize) -> Result<Vec<T>> {
    let parts: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .collect();
    if parts.len() != want {
        return Err(Error::Format {
            line,
            message: format!("expected {want} fields, found {}", parts.len()),
        });
    }
    parts
        .iter()
        .map(|p| {
            p.parse().map_err(|_| Error::Format {
                line,
                message: format!("cannot parse '{p}'"),
            })
        })
        .collect()
}

fn point_line(line: usize, text: &str) -> Result<Point2> {
    let v: Vec<f64> = fields(line, text, 2)?;
    Point2::try_new(v[0], v[1]).map_err(|_| Error::Format {
        line,
        message: "coordinates must be finite".into(),
    })
}

/// Reads the format of [`write_graph`]. The point section is optional and
/// detected from the number of lines.
pub fn read_graph(text: &str) -> Result<GeoGraph> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let Some(&(hline, header)) = lines.first() else {
        return Err(Error::Format {
            line: 1,
            message: "missing 'n m' header".into(),
        });
    };
    let nm: Vec<usize> = fields(hline, header, 2)?;
    let (n, m) = (nm[0], nm[1]);
    let body = &lines[1..];
    let with_points = if body.len() == n + m {
        true
    } else if body.len() == m {
        false
    } else {
        let line = body.last().map_or(hline, |l| l.0);
        return Err(Error::Format {
            line,
            message: format!(
                "header promises {n} points and {m} edges, found {} lines",
                body.len()
            ),
        });
    };
    let (point_lines, edge_lines) = body.split_at(if with_points { n } else { 0 });
    let points = if with_points {
        PointSet::Plane(
            point_lines
                .iter()
                .map(|&(l, t)| point_line(l, t))
                .collect::<Result<_>>()?,
        )
    } else {
        PointSet::Abstract(n)
    };
    let mut g = GeoGraph::empty(points, Provenance::Explicit, 0.0);
    for &(line, t) in edge_lines {
        let e: Vec<usize> = fields(line, t, 2)?;
        let (i, j) = (e[0], e[1]);
        if i >= n || j >= n || i == j || g.has_edge(i, j) {
            return Err(Error::Format {
                line,
                message: format!("invalid or repeated edge {i} {j}"),
            });
        }
        g.add_edge_unchecked(i, j);
    }
    Ok(g)
}

/// `# chi = k` header, bound and clique comments, then `vertex color` lines.
pub fn write_certificate(
    cert: &ChromaticCertificate,
    out: &mut (impl io::Write + ?Sized),
) -> io::Result<()> {
    let mut s = format!("# chi = {}\n", cert.chi);
    if !cert.exact {
        let _ = writeln!(s, "# inexact: {} <= chi <= {}", cert.lower_bound, cert.chi);
    }
    let clique: Vec<String> = cert.clique_lb.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(s, "# clique = {}", clique.join(" "));
    for (v, c) in cert.coloring.iter().enumerate() {
        let _ = writeln!(s, "{v} {c}");
    }
    out.write_all(s.as_bytes())
}

/// Reads `2k n`, then `2k` vector lines, then `n` point lines.
pub fn read_finite_k(text: &str) -> Result<(FiniteK, Vec<Point2>)> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let Some(&(hline, header)) = lines.first() else {
        return Err(Error::Format {
            line: 1,
            message: "missing '2k n' header".into(),
        });
    };
    let kn: Vec<usize> = fields(hline, header, 2)?;
    let (k, n) = (kn[0], kn[1]);
    if lines.len() - 1 != k + n {
        return Err(Error::Format {
            line: hline,
            message: format!("header promises {} lines, found {}", k + n, lines.len() - 1),
        });
    }
    let parsed: Vec<Point2> = lines[1..]
        .iter()
        .map(|&(l, t)| point_line(l, t))
        .collect::<Result<_>>()?;
    let (vectors, points) = parsed.split_at(k);
    Ok((FiniteK::new(vectors.to_vec())?, points.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::spindle_h2;

    /// Exhaustive oracle: smallest k admitting a proper k-coloring.
    fn brute_chi(g: &GeoGraph) -> usize {
        let n = g.len();
        if n == 0 {
            return 0;
        }
        let edges = g.edges();
        (1..=n)
            .find(|&k| {
                let total = (k as u64).pow(n as u32);
                (0..total).any(|mut code| {
                    let mut c = vec![0usize; n];
                    for slot in c.iter_mut() {
                        *slot = (code % k as u64) as usize;
                        code /= k as u64;
                    }
                    edges.iter().all(|&(i, j)| c[i] != c[j])
                })
            })
            .unwrap()
    }

    fn brute_clique(g: &GeoGraph) -> usize {
        let n = g.len();
        (0u32..1 << n)
            .filter(|&mask| {
                let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                g.is_clique(&vs)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Deterministic pseudo-random graphs for solver cross-checks.
    fn lcg_graph(seed: u64, n: usize, p_num: u64) -> GeoGraph {
        let mut s = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                s = s
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                if (s >> 33) % 100 < p_num {
                    edges.push((i, j));
                }
            }
        }
        GeoGraph::from_edges(PointSet::Abstract(n), &edges).unwrap()
    }

    fn triangle_points() -> Vec<Point2> {
        vec![
            Point2::ORIGIN,
            Point2::new(1.0, 0.0),
            Point2::new(0.5, 3f64.sqrt() / 2.0),
        ]
    }

    #[test]
    fn unit_triangle() {
        let g = build_graph(
            PointSet::Plane(triangle_points()),
            GraphMetric::Plane(PseudoMetricExpr::Euclid),
            DistanceSet::singleton(1.0).unwrap(),
            DEFAULT_EDGE_TOL,
        )
        .unwrap();
        assert_eq!(g.edge_count(), 3);
        let cert = chromatic_number_exact(&g, SolveBudget::default()).unwrap();
        assert_eq!(cert.chi, 3);
        assert!(cert.exact);
    }

    #[test]
    fn far_interval_is_edgeless() {
        let g = build_graph(
            PointSet::Plane(triangle_points()),
            GraphMetric::Plane(PseudoMetricExpr::Euclid),
            DistanceSet::interval(5.0, 6.0).unwrap(),
            DEFAULT_EDGE_TOL,
        )
        .unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(
            chromatic_number_exact(&g, SolveBudget::default())
                .unwrap()
                .chi,
            1
        );
    }

    #[test]
    fn rejects_duplicates_and_mismatch() {
        let pts = vec![Point2::ORIGIN, Point2::ORIGIN];
        let e = build_graph(
            PointSet::Plane(pts),
            GraphMetric::Plane(PseudoMetricExpr::Euclid),
            DistanceSet::singleton(1.0).unwrap(),
            0.0,
        );
        assert!(matches!(e, Err(Error::DuplicatePoint(0, 1))));
        let e = build_graph(
            PointSet::Plane(triangle_points()),
            GraphMetric::Hyperbolic,
            DistanceSet::singleton(1.0).unwrap(),
            0.0,
        );
        assert!(matches!(e, Err(Error::DomainMismatch)));
    }

    /// Hand adjacency list of the spindle.
    const SPINDLE_ADJ: [&[usize]; 7] = [
        &[1, 2, 4, 5],
        &[0, 2, 3],
        &[0, 1, 3],
        &[1, 2, 6],
        &[0, 5, 6],
        &[0, 4, 6],
        &[3, 4, 5],
    ];

    #[test]
    fn euclidean_spindle() {
        let (pts, _) = moser_spindle_e2();
        let g = build_graph(
            PointSet::Plane(pts),
            GraphMetric::Plane(PseudoMetricExpr::Euclid),
            DistanceSet::singleton(1.0).unwrap(),
            1e-9,
        )
        .unwrap();
        assert_eq!((g.len(), g.edge_count()), (7, 11));
        for (v, adj) in SPINDLE_ADJ.iter().enumerate() {
            assert_eq!(g.neighbors(v).collect::<Vec<_>>(), adj.to_vec());
        }
        assert_eq!(brute_chi(&g), 4);
        assert_eq!(
            chromatic_number_exact(&g, SolveBudget::default())
                .unwrap()
                .chi,
            4
        );
    }

    #[test]
    fn hyperbolic_spindle() {
        let s = spindle_h2(1.0).unwrap();
        let g = build_graph(
            PointSet::HalfPlane(s.points),
            GraphMetric::Hyperbolic,
            DistanceSet::singleton(1.0).unwrap(),
            1e-9,
        )
        .unwrap();
        assert_eq!(g.edge_count(), 11);
        let cert = chromatic_number_exact(&g, SolveBudget::default()).unwrap();
        assert_eq!(cert.chi, 4);
        assert_eq!(cert.clique_lb.len(), 3);
        assert!(verify_coloring(&g, &cert.coloring).unwrap().is_empty());
    }

    #[test]
    fn complete_graph_chi() {
        let g = GeoGraph::complete(6);
        let cert = chromatic_number_exact(&g, SolveBudget::default()).unwrap();
        assert_eq!((cert.chi, cert.clique_lb.len()), (6, 6));
    }

    #[test]
    fn four_cycle_clique() {
        let g =
            GeoGraph::from_edges(PointSet::Abstract(4), &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(
            max_clique(&g, SolveBudget::default())
                .unwrap()
                .vertices
                .len(),
            2
        );
        assert_eq!(
            chromatic_number_exact(&g, SolveBudget::default())
                .unwrap()
                .chi,
            2
        );
    }

    #[test]
    fn solver_matches_brute_force() {
        for seed in 0..120 {
            let n = 1 + (seed as usize % 9);
            let g = lcg_graph(seed, n, 20 + seed % 70);
            let cert = chromatic_number_exact(&g, SolveBudget::default()).unwrap();
            assert_eq!(cert.chi, brute_chi(&g), "seed {seed}");
            assert!(verify_coloring(&g, &cert.coloring).unwrap().is_empty());
            assert_eq!(cert.clique_lb.len(), brute_clique(&g));
            assert!(g.is_clique(&cert.clique_lb));
            assert!(cert.chi <= greedy_degeneracy_bound(&g));
            assert!(greedy_degeneracy_bound(&g) <= degeneracy(&g) + 1);
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let g = lcg_graph(3, 60, 50);
        let cert = chromatic_number_exact(&g, SolveBudget::nodes(50)).unwrap();
        assert!(!cert.exact);
        assert!(cert.lower_bound <= cert.chi);
        assert!(verify_coloring(&g, &cert.coloring).unwrap().is_empty());
        assert_eq!(colors_used(&cert.coloring), cert.chi);
    }

    #[test]
    fn vertex_cap() {
        let g = GeoGraph::from_edges(PointSet::Abstract(201), &[]).unwrap();
        assert!(matches!(
            chromatic_number_exact(&g, SolveBudget::default()),
            Err(Error::TooManyVertices {
                vertices: 201,
                cap: 200
            })
        ));
    }

    fn axis_k() -> FiniteK {
        FiniteK::new(vec![Point2::new(1.0, 0.0), Point2::new(-1.0, 0.0)]).unwrap()
    }

    #[test]
    fn finite_k_path() {
        let pts: Vec<Point2> = (0..=5).map(|i| Point2::new(i as f64, 0.0)).collect();
        let g = build_graph_finite_k(&pts, &axis_k(), 1e-9).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(greedy_degeneracy_bound(&g), 2);
    }

    fn grid_window(m: i32) -> Vec<Point2> {
        (0..m)
            .flat_map(|i| (0..m).map(move |j| Point2::new(i as f64, j as f64)))
            .collect()
    }

    #[test]
    fn finite_k_grid() {
        let g = build_graph_finite_k(&grid_window(5), &axis_k(), 1e-9).unwrap();
        assert_eq!(
            chromatic_number_exact(&g, SolveBudget::default())
                .unwrap()
                .chi,
            2
        );
        let square = FiniteK::new(vec![
            Point2::new(1.0, 0.0),
            Point2::new(-1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.0, -1.0),
        ])
        .unwrap();
        let g = build_graph_finite_k(&grid_window(6), &square, 1e-9).unwrap();
        assert!((0..g.len()).all(|v| g.degree(v) <= 4));
        assert_eq!(
            chromatic_number_exact(&g, SolveBudget::default())
                .unwrap()
                .chi,
            2
        );
        assert_eq!(greedy_degeneracy_bound(&g), 2);
    }

    #[test]
    fn finite_k_validation() {
        assert!(FiniteK::new(vec![Point2::new(1.0, 0.0)]).is_err());
        assert!(FiniteK::new(vec![Point2::ORIGIN, Point2::ORIGIN]).is_err());
        assert!(FiniteK::new(vec![]).is_err());
    }

    #[test]
    fn verify_constant_triangle() {
        let g = GeoGraph::complete(3);
        assert_eq!(verify_coloring(&g, &[0, 0, 0]).unwrap().len(), 3);
        let path = GeoGraph::from_edges(PointSet::Abstract(3), &[(0, 1), (1, 2)]).unwrap();
        assert!(verify_coloring(&path, &[0, 1, 0]).unwrap().is_empty());
    }

    #[test]
    fn graph_file_round_trip() {
        let (pts, edges) = moser_spindle_e2();
        let g = GeoGraph::from_edges(PointSet::Plane(pts), &edges).unwrap();
        let mut buf = Vec::new();
        write_graph(&g, &mut buf).unwrap();
        let back = read_graph(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.points(), g.points());

        let abstract_ = read_graph("3 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(abstract_.points(), &PointSet::Abstract(3));
        assert!(matches!(
            read_graph("3 3\n0 1\n1 2\n"),
            Err(Error::Format { .. })
        ));
        assert!(matches!(
            read_graph("2 1\n0 0\n"),
            Err(Error::Format { .. })
        ));
    }

    #[test]
    fn certificate_text() {
        let cert = chromatic_number_exact(&GeoGraph::complete(3), SolveBudget::default()).unwrap();
        let mut buf = Vec::new();
        write_certificate(&cert, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# chi = 3\n"));
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 3);
    }

    #[test]
    fn finite_k_file() {
        let (k, pts) = read_finite_k("2 3\n1 0\n-1 0\n0 0\n1 0\n2 0\n").unwrap();
        assert_eq!((k.len(), pts.len()), (2, 3));
        assert!(read_finite_k("2 3\n1 0\n1 0\n0 0\n1 0\n2 0\n").is_err());
    }
}
