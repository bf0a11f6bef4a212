//! Numerical search for distance-`d` embeddings of small graphs.
//!
//! The objective `Σ (ρ(p_i, p_j) - d)²` over the target edges is minimized
//! by Nelder–Mead (adaptive coefficients), which needs no gradients and so
//! copes with the kinks of `cap`/`max` metrics. Each restart runs several
//! rounds, re-seeding the simplex around the best point with a size matched
//! to the current residual. Points of ℍ² are parametrized as `(x, ln y)`.
//!
//! A converged result is a witness that has been re-measured; failure to
//! converge proves nothing.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hyperbolic::{hyp_distance, HPoint};
use crate::metric::{NamedMetric, Point2, PseudoMetricExpr};
use crate::parallel::with_pool;
use crate::verify::SampleRng;

/// Default bound on the maximum edge residual.
pub const DEFAULT_EMBED_TOL: f64 = 1e-8;

/// Default number of random restarts.
pub const DEFAULT_RESTARTS: usize = 64;

/// Restarts run together; results never depend on the thread count.
const RESTART_BATCH: usize = 8;

const MAX_ROUNDS: usize = 40;

#[derive(Debug, Clone, PartialEq)]
pub enum EmbedSpace {
    Plane(PseudoMetricExpr),
    Hyperbolic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbedProblem {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub space: EmbedSpace,
    pub d: f64,
    pub restarts: usize,
    pub tol: f64,
}

impl EmbedProblem {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, space: EmbedSpace, d: f64) -> Result<Self> {
        let p = EmbedProblem {
            n,
            edges,
            space,
            d,
            restarts: DEFAULT_RESTARTS,
            tol: DEFAULT_EMBED_TOL,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(
                "embedding needs at least 2 vertices".into(),
            ));
        }
        if !(self.d.is_finite() && self.d > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "d must be > 0, got {}",
                self.d
            )));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) || self.restarts == 0 {
            return Err(Error::InvalidParameter(
                "need tol > 0 and restarts >= 1".into(),
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j) in &self.edges {
            if i >= self.n || j >= self.n || i == j || !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidParameter(format!(
                    "edge ({i}, {j}) breaks simplicity"
                )));
            }
        }
        if let EmbedSpace::Plane(e) = &self.space {
            e.validate()?;
        }
        Ok(())
    }

    fn distance(&self, a: (f64, f64), b: (f64, f64)) -> f64 {
        match &self.space {
            EmbedSpace::Plane(e) => e.eval(Point2::new(a.0, a.1), Point2::new(b.0, b.1)),
            EmbedSpace::Hyperbolic => {
                hyp_distance(HPoint { x: a.0, y: a.1 }, HPoint { x: b.0, y: b.1 })
            }
        }
    }

    fn decode(&self, v: &[f64]) -> Vec<(f64, f64)> {
        v.chunks_exact(2)
            .map(|c| match self.space {
                EmbedSpace::Plane(_) => (c[0], c[1]),
                EmbedSpace::Hyperbolic => (c[0], c[1].exp()),
            })
            .collect()
    }

    fn objective(&self, v: &[f64]) -> f64 {
        let pos = self.decode(v);
        let f: f64 = self
            .edges
            .iter()
            .map(|&(i, j)| {
                let r = self.distance(pos[i], pos[j]) - self.d;
                r * r
            })
            .sum();
        if f.is_nan() {
            f64::INFINITY
        } else {
            f
        }
    }

    /// Largest `|ρ(p_i, p_j) - d|` over the edges.
    pub fn max_residual(&self, positions: &[(f64, f64)]) -> f64 {
        self.edges
            .iter()
            .map(|&(i, j)| (self.distance(positions[i], positions[j]) - self.d).abs())
            .fold(0.0, f64::max)
    }

    /// Uniform start: plane points in `[-2d, 2d]²`, ℍ² points with `x` and
    /// `ln y` in `[-d, d]`.
    fn initial(&self, rng: &mut SampleRng) -> Vec<f64> {
        let half = match self.space {
            EmbedSpace::Plane(_) => 2.0 * self.d,
            EmbedSpace::Hyperbolic => self.d,
        };
        (0..2 * self.n)
            .map(|_| rng.uniform_in(-half, half))
            .collect()
    }

    fn scale(&self) -> f64 {
        match self.space {
            EmbedSpace::Plane(_) => self.d,
            EmbedSpace::Hyperbolic => self.d.min(1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbedResult {
    /// Raw coordinates; `(x, y)` with `y > 0` for ℍ².
    pub positions: Vec<(f64, f64)>,
    pub max_residual: f64,
    pub converged: bool,
    /// Restarts consumed up to and including the returned one.
    pub restarts_used: usize,
    /// Lowest residual seen per restart, for diagnostics.
    pub restart_residuals: Vec<f64>,
}

/// Minimizes `f` from a simplex of size `step` about `x0`. Stops once
/// `f <= stop_at`, the simplex collapses, or `max_evals` is spent.
pub fn nelder_mead(
    f: &dyn Fn(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    stop_at: f64,
    max_evals: usize,
) -> (Vec<f64>, f64) {
    let n = x0.len();
    let nf = n as f64;
    let (alpha, beta, gamma, delta) = (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf);
    let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut evals = n + 1;
    let point = |c: &[f64], w: &[f64], t: f64| -> Vec<f64> {
        c.iter().zip(w).map(|(a, b)| a + t * (b - a)).collect()
    };
    loop {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();
        let (best, worst) = (values[0], values[n]);
        let size = simplex[1..]
            .iter()
            .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        let span = simplex[0].iter().fold(1.0f64, |m, x| m.max(x.abs()));
        if best <= stop_at
            || evals >= max_evals
            || size <= 4.0 * f64::EPSILON * span
            || worst == best
        {
            return (simplex.swap_remove(0), best);
        }
        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / nf;
            }
        }
        let reflected = point(&centroid, &simplex[n], -alpha);
        let fr = f(&reflected);
        evals += 1;
        if fr < values[0] {
            let expanded = point(&centroid, &simplex[n], -alpha * beta);
            let fe = f(&expanded);
            evals += 1;
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
            continue;
        }
        let (contracted, fc_limit) = if fr < values[n] {
            (point(&centroid, &simplex[n], -alpha * gamma), fr)
        } else {
            (point(&centroid, &simplex[n], gamma), values[n])
        };
        let fc = f(&contracted);
        evals += 1;
        if fc <= fc_limit {
            simplex[n] = contracted;
            values[n] = fc;
            continue;
        }
        for i in 1..=n {
            simplex[i] = point(&simplex[0], &simplex[i], delta);
            values[i] = f(&simplex[i]);
        }
        evals += n;
    }
}

fn run_restart(problem: &EmbedProblem, seed: u64, index: usize) -> (Vec<(f64, f64)>, f64) {
    let mut rng = SampleRng::stream(seed, index as u64);
    let mut x = problem.initial(&mut rng);
    let f = |v: &[f64]| problem.objective(v);
    let mut fx = f(&x);
    let stop_at = (0.5 * problem.tol).powi(2);
    let max_evals = 400 * x.len() * x.len() + 2000;
    let scale = problem.scale();
    for round in 0..MAX_ROUNDS {
        let step = if round == 0 {
            0.2 * scale
        } else {
            scale * (10.0 * fx.sqrt()).clamp(1e-10, 0.2)
        };
        let (nx, nfx) = nelder_mead(&f, &x, step, stop_at, max_evals);
        let improved = nfx < fx * 0.999;
        if nfx <= fx {
            x = nx;
            fx = nfx;
        }
        if fx <= stop_at || (!improved && round > 0) {
            break;
        }
    }
    let pos = problem.decode(&x);
    let r = problem.max_residual(&pos);
    (pos, r)
}

/// Restart index, positions and residual.
type Candidate = (usize, Vec<(f64, f64)>, f64);

/// Searches for positions with every edge at distance `d`.
///
/// Restarts run in fixed batches; the lowest-index converged restart wins.
/// Without convergence the lowest-residual restart is returned.
pub fn embed_graph(problem: &EmbedProblem, seed: u64) -> Result<EmbedResult> {
    problem.validate()?;
    let mut residuals = Vec::with_capacity(problem.restarts);
    let mut best: Option<Candidate> = None;
    let mut start = 0;
    while start < problem.restarts {
        let end = (start + RESTART_BATCH).min(problem.restarts);
        let batch: Vec<(Vec<(f64, f64)>, f64)> = with_pool(|| {
            (start..end)
                .into_par_iter()
                .map(|i| run_restart(problem, seed, i))
                .collect()
        });
        for (k, (pos, r)) in batch.into_iter().enumerate() {
            let idx = start + k;
            residuals.push(r);
            if best.as_ref().is_none_or(|b| r < b.2 && b.2 > problem.tol) {
                best = Some((idx, pos, r));
            }
        }
        if best.as_ref().is_some_and(|b| b.2 <= problem.tol) {
            let (idx, positions, r) = best.expect("restart result");
            return Ok(EmbedResult {
                positions,
                max_residual: r,
                converged: true,
                restarts_used: idx + 1,
                restart_residuals: residuals,
            });
        }
        start = end;
    }
    let (_, positions, r) = best.expect("at least one restart");
    Ok(EmbedResult {
        positions,
        max_residual: r,
        converged: false,
        restarts_used: problem.restarts,
        restart_residuals: residuals,
    })
}

/// A distance-1 triangle for a metric declared proper.
pub fn triangle_witness(metric: &NamedMetric, seed: u64) -> Result<EmbedResult> {
    if metric.is_proper != Some(true) {
        return Err(Error::Precondition(format!(
            "metric '{}' is not declared proper; a distance-1 triangle need not exist",
            metric.name
        )));
    }
    let problem = EmbedProblem::new(
        3,
        vec![(0, 1), (1, 2), (0, 2)],
        EmbedSpace::Plane(metric.expr.clone()),
        1.0,
    )?;
    embed_graph(&problem, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Builtin;

    fn triangle(space: EmbedSpace, d: f64) -> EmbedProblem {
        EmbedProblem::new(3, vec![(0, 1), (1, 2), (0, 2)], space, d).unwrap()
    }

    #[test]
    fn nelder_mead_quadratic() {
        let f = |v: &[f64]| (v[0] - 1.0).powi(2) + 10.0 * (v[1] + 2.0).powi(2);
        let (x, fx) = nelder_mead(&f, &[0.0, 0.0], 0.5, 1e-24, 10_000);
        assert!(fx < 1e-20 && (x[0] - 1.0).abs() < 1e-9 && (x[1] + 2.0).abs() < 1e-9);
    }

    #[test]
    fn euclid_triangle() {
        let r = embed_graph(
            &triangle(EmbedSpace::Plane(PseudoMetricExpr::Euclid), 1.0),
            1,
        )
        .unwrap();
        assert!(r.converged && r.max_residual < 1e-8);
        assert_eq!(r.restarts_used, 1);
    }

    #[test]
    fn euclid_scaling() {
        let p1 = triangle(EmbedSpace::Plane(PseudoMetricExpr::Euclid), 1.0);
        let r = embed_graph(&p1, 3).unwrap();
        let s = 2.5;
        let scaled: Vec<(f64, f64)> = r.positions.iter().map(|&(x, y)| (s * x, s * y)).collect();
        let p2 = triangle(EmbedSpace::Plane(PseudoMetricExpr::Euclid), s);
        assert!(p2.max_residual(&scaled) <= s * 1e-8);
    }

    #[test]
    fn seed_determinism() {
        let p = triangle(EmbedSpace::Hyperbolic, 2.0);
        assert_eq!(embed_graph(&p, 11).unwrap(), embed_graph(&p, 11).unwrap());
    }

    #[test]
    fn triangle_witness_rules() {
        let star = NamedMetric::builtin(Builtin::RhoStar(3.0)).unwrap();
        let r = triangle_witness(&star, 5).unwrap();
        assert!(r.converged);
        let rho1 = NamedMetric::builtin(Builtin::Rho1).unwrap();
        assert!(matches!(
            triangle_witness(&rho1, 5),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn invalid_problems() {
        let e = EmbedSpace::Plane(PseudoMetricExpr::Euclid);
        assert!(EmbedProblem::new(1, vec![], e.clone(), 1.0).is_err());
        assert!(EmbedProblem::new(3, vec![(0, 0)], e.clone(), 1.0).is_err());
        assert!(EmbedProblem::new(3, vec![(0, 1), (1, 0)], e.clone(), 1.0).is_err());
        assert!(EmbedProblem::new(3, vec![(0, 1)], e, 0.0).is_err());
    }
}
