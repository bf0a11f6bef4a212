// Adversarial sampling of pairs at the target distance against colorings.

use chromatic_lab::coloring::Domain;
use chromatic_lab::hyperbolic::CheckerboardColoring;
use chromatic_lab::metric::{DistanceSet, NamedMetric};
use chromatic_lab::planar::{strip_coloring, ConstantColoring};
use chromatic_lab::verify::{verify_statistical, SampleSpec, Space};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let samples = 50_000;

    let high = CheckerboardColoring::high_curvature(4.0)?;
    let spec = SampleSpec::new(Space::Hyperbolic, DistanceSet::singleton(4.0)?, samples, 7);
    let report = verify_statistical(&high, &spec)?;
    println!("{}", report.summary());
    assert!(report.passed());

    let rho2 = NamedMetric::from_arg("builtin:rho2")?;
    let spec = SampleSpec::new(
        Space::Plane(rho2.expr),
        DistanceSet::singleton(1.0)?,
        samples,
        7,
    );
    let report = verify_statistical(&strip_coloring(), &spec)?;
    println!("{}", report.summary());
    assert!(report.passed());

    let spec = SampleSpec::new(Space::Hyperbolic, DistanceSet::singleton(1.0)?, 1_000, 7);
    let report = verify_statistical(
        &ConstantColoring {
            domain: Domain::HalfPlane,
        },
        &spec,
    )?;
    println!("{}", report.summary());
    assert_eq!(report.violation_count, report.samples_realized);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
