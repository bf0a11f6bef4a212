// Parse metric expressions, print their canonical form and evaluate them.

use chromatic_lab::metric::{parse_metric, Builtin, NamedMetric, Point2};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = Point2::new(0.0, 0.0);
    let q = Point2::new(3.0, 4.0);

    let expr = parse_metric("max(axis(1), bound(axis(2)))")?;
    println!("{expr}: {:.6}", expr.eval(p, q));
    assert_eq!(expr.eval(p, q), 3.0);
    assert_eq!(parse_metric(&expr.to_string())?, expr);

    for b in [
        Builtin::Rho1,
        Builtin::Rho2,
        Builtin::RhoInfinity,
        Builtin::RhoStar(2.0),
        Builtin::LineInterval(3),
        Builtin::ProperProduct(2, 3),
    ] {
        let m = NamedMetric::builtin(b)?;
        println!(
            "{:<16} {:<60} d(p,q) = {:.6}",
            m.name,
            m.expr.to_string(),
            m.expr.eval(p, q)
        );
    }

    let rho1 = NamedMetric::from_arg("builtin:rho1")?;
    assert!((rho1.expr.eval(p, q) - 5.0 / 6.0).abs() < 1e-15);

    assert!(parse_metric("cap(euclid, -1)").is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
