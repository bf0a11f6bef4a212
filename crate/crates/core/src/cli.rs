//! Command-line front end.
//!
//! [`run`] parses arguments, writes to the given streams and returns the
//! process exit code, so the whole surface is testable in-process.
//!
//! Exit codes: 0 success, 1 violations found or embedding not converged,
//! 2 bad flags or inputs, 3 exact solver budget exhausted.
//!
//! Point lists are printed as `x,y` rows and edge lists as `i,j` rows
//! (0-based). Graph files use the whitespace format of
//! [`crate::graph::write_graph`]; commas are accepted as separators.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bounds::{bounds_svg, bounds_table, write_bounds_csv, Family};
use crate::coloring::{ColorRule, Domain};
use crate::embed::{embed_graph, EmbedProblem, EmbedSpace};
use crate::error::{Error, Result};
use crate::graph::{
    build_graph, build_graph_finite_k, chromatic_number_exact, moser_spindle_e2, read_finite_k,
    read_graph, write_certificate, GeoGraph, GraphMetric, PointSet, SolveBudget, DEFAULT_EDGE_TOL,
    DEFAULT_NODE_BUDGET,
};
use crate::hyperbolic::{circle_clique, spindle_h2, CheckerboardColoring};
use crate::metric::{DistanceSet, NamedMetric, Point2};
use crate::planar::{
    countable_square_coloring, grid_clique, grid_mod_coloring, interval_1d_coloring,
    product_coloring, strip_coloring, ConstantColoring, GridModColoring,
};
use crate::verify::{verify_statistical, SampleSpec, Space, Window, DEFAULT_SAMPLES};

/// Default master seed for commands that sample.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "chromatic-lab",
    version,
    about = "Metrics, colorings, cliques and exact chromatic numbers of distance graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a metric at a pair of points.
    MetricEval(MetricEvalArgs),
    /// Sample pairs at a target distance and check a coloring on them.
    Verify(VerifyArgs),
    /// Exact chromatic number of a graph file or a named construction.
    Chi(ChiArgs),
    /// Constructive lower and upper bounds as CSV, optionally plotted.
    Bounds(BoundsArgs),
    /// Search for positions realizing every edge of a graph at distance d.
    Embed(EmbedArgs),
}

#[derive(Debug, Args)]
struct MetricEvalArgs {
    /// DSL expression, or builtin:NAME[:PARAMS].
    #[arg(long, allow_hyphen_values = true)]
    metric: String,
    /// First point as x,y.
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    /// Second point as x,y.
    #[arg(long, allow_hyphen_values = true)]
    q: String,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["d", "interval"]))]
struct VerifyArgs {
    /// plane or hyperbolic.
    #[arg(long)]
    space: String,
    /// Plane metric: DSL expression or builtin:NAME[:PARAMS].
    #[arg(long, default_value = "euclid", allow_hyphen_values = true)]
    metric: String,
    /// strip | grid[:eps=E,n=N] | product:N1,N2 | squares:side=S | constant |
    /// high-curvature | low-curvature.
    #[arg(long)]
    coloring: String,
    /// Single target distance.
    #[arg(long)]
    d: Option<f64>,
    /// Target interval as a,b.
    #[arg(long)]
    interval: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sampling window as x_min,x_max,y_min,y_max.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// CSV report path; without it the report goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["graph", "construct"]))]
struct ChiArgs {
    /// Graph file.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// moser-e2 | moser-h2:D | grid-clique:D1,D2 | circle-clique:D,EPS |
    /// finite-k:FILE.
    #[arg(long)]
    construct: Option<String>,
    /// Search-node budget shared by the clique and coloring searches.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Edge tolerance for metric constructions.
    #[arg(long, default_value_t = DEFAULT_EDGE_TOL)]
    tol: f64,
    /// Also write the certificate here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    /// euclid-interval or hyperbolic.
    #[arg(long)]
    family: String,
    #[arg(long, allow_hyphen_values = true)]
    d_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    d_max: f64,
    #[arg(long, allow_hyphen_values = true)]
    step: f64,
    /// CSV path; without it the table goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional SVG plot path.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EmbedArgs {
    /// Graph file whose edges must all have length d.
    #[arg(long)]
    target: PathBuf,
    /// plane or hyperbolic.
    #[arg(long)]
    space: String,
    /// Plane metric: DSL expression or builtin:NAME[:PARAMS].
    #[arg(long, default_value = "euclid", allow_hyphen_values = true)]
    metric: String,
    #[arg(long)]
    d: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    restarts: Option<usize>,
    /// Residual below which the search counts as converged.
    #[arg(long)]
    tol: Option<f64>,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::MetricEval(a) => metric_eval(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Chi(a) => chi(a, out),
        Command::Bounds(a) => bounds(a, out),
        Command::Embed(a) => embed(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e)
}

fn reals(text: &str, want: usize, what: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidParameter(format!("cannot parse {what} '{text}'")))?;
    if v.len() != want || v.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "{what} needs {want} finite comma-separated numbers, got '{text}'"
        )));
    }
    Ok(v)
}

fn point(text: &str) -> Result<Point2> {
    let v = reals(text, 2, "point")?;
    Point2::try_new(v[0], v[1])
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn metric_eval(a: MetricEvalArgs, out: &mut dyn Write) -> Result<i32> {
    let metric = NamedMetric::from_arg(&a.metric)?;
    let value = metric.expr.eval(point(&a.p)?, point(&a.q)?);
    writeln!(out, "{value:.12}").map_err(io_err)?;
    Ok(0)
}

/// `key=value` parameters of a coloring spec such as `eps=0.7,n=4`.
fn keyed(params: &str, keys: &[&str]) -> Result<Vec<String>> {
    let mut values = vec![None; keys.len()];
    for part in params.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got '{part}'")))?;
        let slot = keys
            .iter()
            .position(|&key| key == k.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown parameter '{k}'")))?;
        values[slot] = Some(v.trim().to_string());
    }
    values
        .into_iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or_else(|| Error::InvalidParameter(format!("missing parameter '{k}'"))))
        .collect()
}

fn parse_num<T: std::str::FromStr>(text: &str, what: &str) -> Result<T> {
    text.trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("cannot parse {what} '{text}'")))
}

fn coloring_from_arg(
    spec: &str,
    domain: Domain,
    target: &DistanceSet,
) -> Result<Box<dyn ColorRule>> {
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    let no_params = || {
        if params.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "coloring '{name}' takes no parameters"
            )))
        }
    };
    Ok(match name {
        "strip" => {
            no_params()?;
            Box::new(strip_coloring())
        }
        "grid" if params.is_empty() => {
            Box::new(GridModColoring::for_euclid_interval(target.upper())?)
        }
        "grid" => {
            let v = keyed(params, &["eps", "n"])?;
            Box::new(grid_mod_coloring(
                parse_num(&v[0], "eps")?,
                parse_num(&v[1], "n")?,
            )?)
        }
        "product" => {
            let (a, b) = params
                .split_once(',')
                .ok_or_else(|| Error::InvalidParameter("product needs N1,N2".into()))?;
            Box::new(product_coloring(
                interval_1d_coloring(parse_num(a, "N1")?)?,
                interval_1d_coloring(parse_num(b, "N2")?)?,
            ))
        }
        "squares" => {
            let v = keyed(params, &["side"])?;
            Box::new(countable_square_coloring(parse_num(&v[0], "side")?)?)
        }
        "constant" => {
            no_params()?;
            Box::new(ConstantColoring { domain })
        }
        "high-curvature" | "low-curvature" => {
            no_params()?;
            if !target.is_singleton() {
                return Err(Error::InvalidParameter(format!(
                    "{name} needs a single distance --d"
                )));
            }
            let d = target.lower();
            Box::new(if name == "high-curvature" {
                CheckerboardColoring::high_curvature(d)?
            } else {
                CheckerboardColoring::low_curvature(d)?
            })
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "unknown coloring '{spec}'"
            )))
        }
    })
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let space = match a.space.as_str() {
        "plane" => Space::Plane(NamedMetric::from_arg(&a.metric)?.expr),
        "hyperbolic" => Space::Hyperbolic,
        s => return Err(Error::InvalidParameter(format!("unknown space '{s}'"))),
    };
    let target = match (a.d, &a.interval) {
        (Some(d), None) => DistanceSet::singleton(d)?,
        (None, Some(iv)) => {
            let v = reals(iv, 2, "interval")?;
            DistanceSet::interval(v[0], v[1])?
        }
        _ => {
            return Err(Error::InvalidParameter(
                "give exactly one of --d and --interval".into(),
            ))
        }
    };
    let coloring = coloring_from_arg(&a.coloring, space.domain(), &target)?;
    let mut spec = SampleSpec::new(space, target, a.samples, a.seed);
    if let Some(w) = &a.window {
        let v = reals(w, 4, "window")?;
        spec = spec.with_window(Window::new(v[0], v[1], v[2], v[3])?);
    }
    let report = verify_statistical(coloring.as_ref(), &spec)?;
    match &a.out {
        Some(path) => {
            let mut csv = Vec::new();
            report.write_csv(&mut csv).map_err(io_err)?;
            write_file(path, &csv)?;
            writeln!(out, "{}", report.summary()).map_err(io_err)?;
        }
        None => report.write_csv(out).map_err(io_err)?,
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn construct(spec: &str, tol: f64) -> Result<GeoGraph> {
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    match name {
        "moser-e2" => {
            let (points, edges) = moser_spindle_e2();
            GeoGraph::from_edges(PointSet::Plane(points), &edges)
        }
        "moser-h2" => {
            let d = reals(params, 1, "moser-h2 distance")?[0];
            let s = spindle_h2(d)?;
            build_graph(
                PointSet::HalfPlane(s.points),
                GraphMetric::Hyperbolic,
                DistanceSet::singleton(d)?,
                tol,
            )
        }
        "grid-clique" => {
            let (a, b) = params
                .split_once(',')
                .ok_or_else(|| Error::InvalidParameter("grid-clique needs D1,D2".into()))?;
            let w = grid_clique(parse_num(a, "D1")?, parse_num(b, "D2")?)?;
            build_graph(
                PointSet::Plane(w.points),
                GraphMetric::Plane(w.metric),
                w.target,
                tol,
            )
        }
        "circle-clique" => {
            let v = reals(params, 2, "circle-clique parameters")?;
            let (d, eps) = (v[0], v[1]);
            let points = circle_clique(d, eps);
            if points.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "no circle clique for d={d}, eps={eps}"
                )));
            }
            let target = DistanceSet::interval(d, d * (1.0 + eps))?;
            build_graph(
                PointSet::HalfPlane(points),
                GraphMetric::Hyperbolic,
                target,
                tol,
            )
        }
        "finite-k" => {
            let (k, points) = read_finite_k(&read_text(Path::new(params))?)?;
            build_graph_finite_k(&points, &k, tol)
        }
        _ => Err(Error::InvalidParameter(format!(
            "unknown construction '{spec}'"
        ))),
    }
}

fn chi(a: ChiArgs, out: &mut dyn Write) -> Result<i32> {
    let g = match (&a.graph, &a.construct) {
        (Some(path), None) => read_graph(&read_text(path)?)?,
        (None, Some(spec)) => construct(spec, a.tol)?,
        _ => {
            return Err(Error::InvalidParameter(
                "give exactly one of --graph and --construct".into(),
            ))
        }
    };
    let cert = chromatic_number_exact(&g, SolveBudget::nodes(a.budget))?;
    let mut text = Vec::new();
    write_certificate(&cert, &mut text).map_err(io_err)?;
    if let Some(path) = &a.out {
        write_file(path, &text)?;
    }
    out.write_all(&text).map_err(io_err)?;
    Ok(if cert.exact { 0 } else { 3 })
}

fn bounds(a: BoundsArgs, out: &mut dyn Write) -> Result<i32> {
    let family: Family = a.family.parse()?;
    let rows = bounds_table(family, a.d_min, a.d_max, a.step)?;
    let mut csv = Vec::new();
    write_bounds_csv(&rows, &mut csv).map_err(io_err)?;
    match &a.out {
        Some(path) => write_file(path, &csv)?,
        None => out.write_all(&csv).map_err(io_err)?,
    }
    if let Some(path) = &a.svg {
        write_file(path, bounds_svg(family, &rows).as_bytes())?;
    }
    Ok(0)
}

fn embed(a: EmbedArgs, out: &mut dyn Write) -> Result<i32> {
    let g = read_graph(&read_text(&a.target)?)?;
    let space = match a.space.as_str() {
        "plane" => EmbedSpace::Plane(NamedMetric::from_arg(&a.metric)?.expr),
        "hyperbolic" => EmbedSpace::Hyperbolic,
        s => return Err(Error::InvalidParameter(format!("unknown space '{s}'"))),
    };
    let mut problem = EmbedProblem::new(g.len(), g.edges(), space, a.d)?;
    if let Some(r) = a.restarts {
        problem.restarts = r;
    }
    if let Some(t) = a.tol {
        problem.tol = t;
    }
    problem.validate()?;
    let result = embed_graph(&problem, a.seed)?;
    let residuals: Vec<String> = result
        .restart_residuals
        .iter()
        .map(|r| format!("{r:e}"))
        .collect();
    let mut s = format!(
        "# converged = {}\n# max_residual = {:e}\n# restarts_used = {}\n# restart_residuals = {}\n",
        result.converged,
        result.max_residual,
        result.restarts_used,
        residuals.join(" ")
    );
    for (x, y) in &result.positions {
        s.push_str(&format!("{x},{y}\n"));
    }
    out.write_all(s.as_bytes()).map_err(io_err)?;
    Ok(if result.converged { 0 } else { 1 })
}
