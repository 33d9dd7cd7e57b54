//! Unlabeled-subgraph censuses, tinyness certificates, and counting-bound
//! evaluation for graphs and constructed graph classes, with a deterministic
//! experiment harness on top.

pub mod canon;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod random;

pub use canon::{canonical_certificate, canonical_certificate_with, CanonConfig, Certificate};
pub use error::{Error, Result};
pub use graph::{connected_components, induced_subgraph, Graph, VertexSet};
pub use graph6::{read_graph6, read_graph6_file, write_graph6, write_graph6_file};
pub use iso::{are_isomorphic, find_induced_embedding, find_monomorphism, is_induced_embeddable};
pub use random::{
    child_seed, edges_for_degree, sample_gnm, sample_gnp, transfer_factor, ModelKind, ModelSpec,
    Seed, SplitMix64,
};
