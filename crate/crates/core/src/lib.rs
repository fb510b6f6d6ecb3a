//! Clique-width, rank-width and vertex-minor laboratory for small graphs.
//!
//! The crate provides simple graphs with named vertices and the operations
//! relating them (edge contraction, local complementation, erasure of
//! degree-2 vertices, the distance-2 graph on a stable set), clique-width
//! expressions, exact solvers for clique-width, linear clique-width and
//! rank-width, generators for the graph families `G(n)`, `H(n)`,
//! `Hprime(n)` and square grids, and end-to-end experiment pipelines.

pub mod builders;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod report;
pub mod solvers;
pub mod term;

pub use error::{Error, Result};
pub use graph::{canonical_iso_equal, edge, graphs_equal, ContractionResult, Edge, Graph};
pub use term::{eval_term, is_linear, term_width, CwTerm, LabeledGraph};
