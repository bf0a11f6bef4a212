//! Every runnable example, executed as a test.

mod metric_dsl {
    #![allow(dead_code)]
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/metric_dsl.rs"
    ));
}

#[test]
fn example_metric_dsl() {
    metric_dsl::run_example().unwrap();
}

mod hyperbolic_checkerboards {
    #![allow(dead_code)]
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/hyperbolic_checkerboards.rs"
    ));
}

#[test]
fn example_hyperbolic_checkerboards() {
    hyperbolic_checkerboards::run_example().unwrap();
}

mod planar_colorings {
    #![allow(dead_code)]
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/planar_colorings.rs"
    ));
}

#[test]
fn example_planar_colorings() {
    planar_colorings::run_example().unwrap();
}

mod exact_chromatic {
    #![allow(dead_code)]
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/exact_chromatic.rs"
    ));
}

#[test]
fn example_exact_chromatic() {
    exact_chromatic::run_example().unwrap();
}

mod statistical_verification {
    #![allow(dead_code)]
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/statistical_verification.rs"
    ));
}

#[test]
fn example_statistical_verification() {
    statistical_verification::run_example().unwrap();
}

mod embedding_search {
    #![allow(dead_code)]
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/embedding_search.rs"
    ));
}

#[test]
fn example_embedding_search() {
    embedding_search::run_example().unwrap();
}

mod bounds_table {
    #![allow(dead_code)]
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/bounds_table.rs"
    ));
}

#[test]
fn example_bounds_table() {
    bounds_table::run_example().unwrap();
}
