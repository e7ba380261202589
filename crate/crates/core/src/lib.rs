//! Loose Hamilton cycles in 3-uniform hypergraphs near the minimum-degree
//! threshold: constructions, exact search with refutation certificates,
//! Y-tilings, and a constructive solver for graphs close to the extremal
//! configuration.

pub mod bitset;
pub mod certificate;
pub mod constructions;
pub mod extremal;
pub mod format;
pub mod graph;
pub mod harness;
pub mod hypergraph;
pub mod loose;
pub mod matching;
pub mod params;
pub mod search;
pub mod tiling;
pub mod tripartite;

/// Dense vertex index in `[0, n)`.
pub type Vertex = usize;

pub use bitset::VertexSet;
pub use certificate::{check_certificate, Certificate, CertificateKind};
pub use constructions::{threshold, LabeledPartitionGraph};
pub use graph::Graph;
pub use hypergraph::{GraphError, ThreeGraph, Triple};
pub use loose::{LooseCycle, LoosePath};
pub use params::Parameters;
pub use search::{find_loose_hamilton_cycle, SearchOptions, SearchOutcome};
