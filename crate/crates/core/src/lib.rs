//! Monochromatic copies of sparse graphs in multicolored complete graphs.
//!
//! The crate computes the explicit Ramsey-type bounds for graphs with `m`
//! edges, implements the constructive steps behind them (max-degree
//! reduction, dependent random choice, nested greedy embedding, color
//! focusing), and provides an exhaustive oracle for small cases.

pub mod bitset;
pub mod bounds;
pub mod cli;
pub mod coloring;
pub mod drc;
pub mod embed;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod pipeline;
pub mod reduction;

pub use bitset::VertexSet;
pub use coloring::EdgeColoring;
pub use embed::Embedding;
pub use graph::{Adjacency, Graph};
