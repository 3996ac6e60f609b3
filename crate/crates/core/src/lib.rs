//! Clique counting in graphs of bounded maximum degree.
//!
//! The crate provides the counting primitives (cliques, edge weights, the
//! induced 3-vertex census and μ), tight clusters with their folding and
//! discharging predicates, threshold and lex graphs with compression, an
//! exhaustive enumerator of isomorphism classes, and verification drivers
//! that check extremal clique-count statements by brute force.

pub mod canon;
pub mod cluster;
pub mod count;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod threshold;
pub mod verify;

pub use canon::{canonical_form, canonical_labeling, CanonicalKey};
pub use cluster::{
    discharge_audit, find_clusters, fold, fold_certified, is_dischargeable, is_foldable, reduce,
    tight_edges, Cluster, DischargeAudit, FoldCertificate, Reduction,
};
pub use count::{
    clique_count_vector, count_all_cliques, count_cliques_of_size, edge_benefit, edge_weight, mu,
    triple_census, CliqueCountVector, TripleCensus,
};
pub use enumerate::{enumerate_graphs, SearchSpace};
pub use error::{Error, Result};
pub use graph::{Graph, MAX_VERTICES};
pub use graph6::{read_graph6, read_graph6_lines, write_graph6};
pub use threshold::{
    compress, compression_split, lex_code, lex_graph, mu_bound_min_degree_one, star_matching_graph,
    threshold_from_code, CompressionSplit, ThresholdCode,
};
pub use verify::{ExtremalParams, VerifyReport, Witness};
