// Lower and upper bound tables for both families, with an SVG plot.

use chromatic_lab::bounds::{bounds_svg, bounds_table, write_bounds_csv, Family};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let euclid = bounds_table(Family::EuclidInterval, 2.0, 10.0, 2.0)?;
    write_bounds_csv(&euclid, &mut std::io::stdout())?;
    assert!(euclid.iter().all(|r| r.upper.is_some_and(|u| r.lower <= u)));

    let hyperbolic = bounds_table(Family::Hyperbolic, 0.5, 6.0, 0.5)?;
    write_bounds_csv(&hyperbolic, &mut std::io::stdout())?;
    let gaps = hyperbolic.iter().filter(|r| r.upper.is_none()).count();
    println!("{gaps} values of d with no upper bound");

    let svg = bounds_svg(Family::EuclidInterval, &euclid);
    println!("SVG plot: {} bytes", svg.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
