//! Command-line workbench and HTTP serve mode for the `ecluster` engine.

pub mod cli;
pub mod error;
pub mod ops;
pub mod server;
pub mod session;

/// A polygon session object holding the fan triangulation of the (n+3)-gon.
pub fn polygon_fan(n: i64) -> ops::Explorable {
    ops::Explorable::Polygon { triangulation: ecluster::polygon_an::Triangulation::fan(n).expect("n >= 1") }
}
