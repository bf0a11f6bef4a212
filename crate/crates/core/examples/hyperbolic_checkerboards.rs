// Checkerboard colorings of the half-plane and the distance-d spindle.

use chromatic_lab::coloring::ColorRule;
use chromatic_lab::hyperbolic::{
    circle_clique, equilateral_apex_distance, hyp_distance, spindle_h2, CheckerboardColoring,
    HPoint,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for d in [3.3, 4.0, 6.0, 10.0] {
        let c = CheckerboardColoring::high_curvature(d)?;
        let board = c.board();
        println!(
            "d = {d:>4}: {} colors, h = {:.4}, ell = {:.4}, tile diameter < {:.4} (never attained)",
            c.color_count(),
            board.h(),
            board.ell(),
            board.tile_diameter_bound()
        );
        assert!(board.tile_diameter_bound() <= d);
    }

    let low = CheckerboardColoring::low_curvature(0.5)?;
    println!("low curvature d = 0.5: {} colors", low.color_count());
    let p = HPoint::new(0.3, 2.0)?;
    println!("label of {p:?} = {}", low.label_of(p));

    let s = spindle_h2(1.0)?;
    let worst = s
        .edges
        .iter()
        .map(|&(i, j)| (hyp_distance(s.points[i], s.points[j]) - 1.0).abs())
        .fold(0.0, f64::max);
    println!("spindle at d = 1: worst edge error {worst:.2e}");
    assert!(worst < 1e-9);

    println!(
        "apex distance at d = 1: {:.12}",
        equilateral_apex_distance(1.0)
    );
    for d in [5.0, 10.0, 15.0, 20.0] {
        println!(
            "circle clique d = {d}, eps = 0.2: {} points",
            circle_clique(d, 0.2).len()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
