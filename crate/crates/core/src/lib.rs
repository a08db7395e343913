//! Verification laboratory for the structure of `{C3, C5}`-free graphs of large
//! minimum degree: generalised Andrásfai graphs, homomorphism search, structural
//! lemma checkers, exact blow-up weight optimisation and exhaustive campaigns.

pub mod bits;
pub mod canon;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod homomorphism;
pub mod io;
pub mod optimizer;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{make_graph, min_degree, Graph, VertexSet};
