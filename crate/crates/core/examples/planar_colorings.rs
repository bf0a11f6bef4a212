// Colorings of the plane and the clique witnesses that bound them below.

use chromatic_lab::coloring::ColorRule;
use chromatic_lab::planar::{
    countable_square_coloring, euclid_packing_clique, grid_clique, grid_mod_coloring,
    interval_1d_coloring, product_coloring, strip_coloring,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let strip = strip_coloring();
    println!(
        "{}: {} colors, (2.5, 7) -> {}",
        strip.name(),
        strip.color_count(),
        strip.label(2.5, 7.0)
    );

    let grid = grid_mod_coloring(std::f64::consts::FRAC_1_SQRT_2, 4)?;
    println!("{}: {} colors", grid.name(), grid.color_count());
    let packing = euclid_packing_clique(2.0)?;
    println!(
        "hexagon clique for [1, 2]: {} points, valid = {}",
        packing.len(),
        packing.is_valid()
    );
    assert_eq!(packing.len(), 7);

    for (d1, d2) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        let clique = grid_clique(d1, d2)?;
        let coloring = product_coloring(
            interval_1d_coloring(d1 as u64 + 1)?,
            interval_1d_coloring(d2 as u64 + 1)?,
        );
        println!(
            "product({d1},{d2}): clique of {} at distance 1, coloring with {} colors",
            clique.len(),
            coloring.color_count()
        );
        assert!(clique.is_valid());
        assert_eq!(coloring.color_count().finite(), Some(clique.len() as u64));
    }

    let squares = countable_square_coloring(0.5)?;
    println!("{}: {} colors", squares.name(), squares.color_count());
    assert!(countable_square_coloring(1.0).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
