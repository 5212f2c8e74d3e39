//! Moore-type bounds, extremal constructions, exact spectra and exhaustive
//! census for bipartite biregular graphs.

pub mod bounds;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod graph;
pub mod spectrum;

pub use bounds::{best_bound, BoundResult, Params, Regime};
pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Distance, GraphMetrics, Side};
