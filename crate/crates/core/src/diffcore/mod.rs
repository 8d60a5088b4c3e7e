//! Exact second-order differentiation over coordinate charts.

mod field;
mod jet;

pub use field::{Chart, Evaluator, Point, ScalarField};
pub use jet::{inverse_jets, Jet};
