// Build distance graphs and certify their chromatic numbers exactly.

use chromatic_lab::graph::{
    build_graph, chromatic_number_exact, degeneracy, max_clique, moser_spindle_e2,
    write_certificate, GeoGraph, GraphMetric, PointSet, SolveBudget, DEFAULT_EDGE_TOL,
};
use chromatic_lab::hyperbolic::spindle_h2;
use chromatic_lab::metric::DistanceSet;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (points, edges) = moser_spindle_e2();
    let e2 = GeoGraph::from_edges(PointSet::Plane(points), &edges)?;
    let cert = chromatic_number_exact(&e2, SolveBudget::default())?;
    println!(
        "Euclidean spindle: chi = {} (exact = {})",
        cert.chi, cert.exact
    );
    assert_eq!(cert.chi, 4);

    for d in [0.5, 1.0, 2.0, 8.0] {
        let s = spindle_h2(d)?;
        let g = build_graph(
            PointSet::HalfPlane(s.points),
            GraphMetric::Hyperbolic,
            DistanceSet::singleton(d)?,
            DEFAULT_EDGE_TOL,
        )?;
        let cert = chromatic_number_exact(&g, SolveBudget::default())?;
        let clique = max_clique(&g, SolveBudget::default())?;
        println!(
            "hyperbolic spindle d = {d}: {} edges, clique {}, degeneracy {}, chi {}",
            g.edge_count(),
            clique.vertices.len(),
            degeneracy(&g),
            cert.chi
        );
        assert_eq!((g.edge_count(), cert.chi), (11, 4));
    }

    let mut text = Vec::new();
    write_certificate(&cert, &mut text)?;
    print!("{}", String::from_utf8(text)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
