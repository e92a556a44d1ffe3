//! Schensted row insertion into random Poissonized Young tableaux.
//!
//! The crate covers the exact side (diagrams, transition measures, limit
//! shapes, insertion and the cumulative function of a tableau) and the Monte
//! Carlo side (seeded tableau samplers, double cumulative function estimates
//! and the experiment harness behind the `tableaux-lab` CLI).

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dcf;
pub mod diagrams;
pub mod error;
pub mod experiments;
pub mod limit_shapes;
pub mod parallel;
pub mod rsk;
pub mod sampling;
pub mod stats;
pub mod transition;

#[cfg(test)]
mod test_support;

pub use diagrams::{CornerSet, CurveParametrization, YoungDiagram};
pub use error::{Error, Result};
pub use parallel::MonteCarlo;
pub use rsk::{BoxCoord, RealTableau, StandardTableau};
pub use sampling::SeededGenerator;
pub use transition::{DiscreteMeasure, ExactMeasure};
