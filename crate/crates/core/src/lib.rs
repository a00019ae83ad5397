//! Vertex-disjoint, pairwise anticomplete path packings between two vertex sets.
//!
//! The crate provides
//! - classical Menger machinery ([`flow`]): maximum vertex-disjoint
//!   `(A, B)`-path packings and minimum separators;
//! - a solver for bounded-degree graphs ([`sparsify`]) returning at least
//!   `⌈flow / (Δ+1)^(Δ²+1)⌉` pairwise anticomplete paths;
//! - a solver for sparse graphs ([`minorfree`]) based on independent sets of
//!   the path conflict graph;
//! - the degeneracy-2 counterexample family ([`counterexample`]);
//! - an exact exponential oracle for small instances ([`oracle`]).

pub mod counterexample;
pub mod error;
pub mod flow;
pub mod format;
pub mod graph;
pub mod minorfree;
pub mod oracle;
pub mod random;
pub mod sparsify;

pub use error::{Error, Result};
pub use flow::{PathSystem, SeparatorCertificate};
pub use format::Instance;
pub use graph::{Anticompleteness, ContractionMap, Graph, IdMap, VertexSet};
pub use minorfree::MinorFreeReport;
pub use oracle::OracleBudget;
pub use sparsify::SparsifyReport;
