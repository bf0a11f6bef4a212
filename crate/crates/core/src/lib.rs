//! Distance graphs over translation-invariant planar metrics and the
//! hyperbolic plane.
//!
//! The crate provides composable plane metrics, explicit colorings and
//! clique constructions, half-plane checkerboard colorings of ℍ², exact
//! chromatic-number and max-clique solvers for finite sampled subgraphs,
//! adversarial statistical verification of colorings, and a derivative-free
//! search for distance-`d` embeddings of small graphs.

pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod embed;
pub mod error;
pub mod graph;
pub mod hyperbolic;
pub mod metric;
pub mod parallel;
pub mod planar;
pub mod verify;

pub use error::{Error, Result};
