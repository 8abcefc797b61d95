//! Exact-arithmetic toolkit for optimal pebbling on grid and torus graphs.
//!
//! A pebbling move takes two pebbles off a vertex and puts one on a
//! neighbour. The crate answers reachability questions exactly, evaluates
//! the weight function `W_D(u) = sum_v D(v) 2^{-d(u,v)}` and the covering
//! ratio ceiling built on it, solves small linear programs over the
//! rationals, and generates the distribution families used to probe covering
//! ratios on grids.
//!
//! Runnable tours of each capability live in `examples/`; the `pebblekit`
//! binary wraps the same functions for scripting.

pub mod constructions;
pub mod distribution;
pub mod error;
pub mod grid;
pub mod lp;
pub mod naive;
pub mod optimal;
#[cfg(test)]
mod properties;
pub mod ratio;
pub mod reach;
pub mod render;
pub mod verify;
pub mod weight;

pub use distribution::{parse_distribution, serialize_distribution, ContinuousDistribution, Distribution, ParsedDistribution};
pub use error::{Error, Result};
pub use grid::{GridSpec, Topology, Vertex};
pub use ratio::Rational;
pub use reach::{CoverageReport, Engine, Move, SearchBudget};
