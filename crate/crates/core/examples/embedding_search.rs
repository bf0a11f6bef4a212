// Numerically search for positions realizing a graph at distance d.

use chromatic_lab::embed::{embed_graph, triangle_witness, EmbedProblem, EmbedSpace};
use chromatic_lab::hyperbolic::SPINDLE_EDGES;
use chromatic_lab::metric::{Builtin, NamedMetric};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let metric = NamedMetric::builtin(Builtin::RhoStar(2.0))?;
    let triangle = triangle_witness(&metric, 1)?;
    println!(
        "triangle under {}: residual {:.2e}, converged = {}",
        metric.name, triangle.max_residual, triangle.converged
    );
    assert!(triangle.converged);

    let spindle = EmbedProblem::new(7, SPINDLE_EDGES.to_vec(), EmbedSpace::Hyperbolic, 1.0)?;
    let result = embed_graph(&spindle, 0)?;
    println!(
        "spindle in the half-plane: residual {:.2e} after {} restarts",
        result.max_residual, result.restarts_used
    );
    for (x, y) in &result.positions {
        println!("{x:.9},{y:.9}");
    }
    assert!(result.converged);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
