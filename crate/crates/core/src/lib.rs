//! Edge clique cover solving via reduction to vertex clique cover.
//!
//! The pipeline: reduce the edge cover instance in place (covered-vertex
//! removal, forced unique maximal cliques, edge-simplicial cliques), turn the
//! residual uncovered edges into a vertex clique cover instance, kernelize
//! that with simplicial removal, crown removal and degree-2 folding, solve
//! the kernel exactly or heuristically, then undo the folds and map every
//! clique back to the original graph. All randomness is seeded and all sweep
//! orders are fixed, so runs reproduce bit for bit.

pub mod bench;
pub mod cli;
pub mod ecc_reduce;
pub mod error;
pub mod graph;
pub mod io;
mod matching;
pub mod pipeline;
pub mod rng;
pub mod trace;
pub mod transform;
pub mod vcc_reduce;
pub mod vcc_solve;

pub use error::{Error, Result};
pub use graph::{DegeneracyOrder, EdgeId, Graph, Vertex};
