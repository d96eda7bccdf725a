//! Exact list-coloring tools for plane graphs of girth at least five with a
//! precolored outer face: embeddings, hypothesis checkers, an exact solver,
//! criticality tests, exhaustive enumeration of critical graphs and face-weight
//! audits.

pub mod audit;
pub mod canon;
pub mod embed;
pub mod enumerate;
pub mod generate;
pub mod graph;
pub mod lists;
pub mod solver;

pub use audit::{Rational, WeightAudit};
pub use embed::{EmbedError, FaceRef, PlaneGraph, Walk};
pub use enumerate::{CandidateFilter, ClassifiedGraph};
pub use graph::{Edge, Graph, Subgraph, Vertex, MAX_VERTICES};
pub use lists::{Color, ColorSet, ListAssignment, PrecoloredPath};
pub use solver::{ClassVerdict, Coloring, CriticalityReport, Verdict};

/// Version string recorded in report headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
