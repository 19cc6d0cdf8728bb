//! Exact engine for E-clusters of interval modules over the real line with
//! the straight descending orientation.

pub mod ar_space;
pub mod cluster_sets;
pub mod compat_core;
pub mod cpi_bridge;
pub mod infinity_gon;
pub mod mutation_engine;
pub mod ordered_line;
pub mod polygon_an;

pub use ordered_line::{int, rat, DoubledPoint, ExtendedRational, IntervalObject, Ladder, Rational, Side};
