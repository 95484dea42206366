//! Stability-number robustness of graphs: whether deleting an edge or adding
//! a non-edge can change α, decided for bipartite graphs through maximum
//! matchings and for chordal graphs through elimination orderings, with
//! machine-checkable certificates and a brute-force oracle for small inputs.

pub mod certify;
pub mod chordal;
pub mod classify;
pub mod error;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod oracle;
mod scc;
pub mod stability;

pub use classify::{
    allowed_degree, alternating_cycle_through, alternating_cycle_with, classify_edges, classify_edges_by_recomputation,
    symmetric_difference_cycles, CycleFamily, EdgeClassification, EdgeStatus, MatchingDigraph,
};
pub use error::{Error, Result};
pub use graph::{
    bipartition, connected_components, induced_subgraph, parse_graph, write_graph, Bipartition, Edge, Graph, VertexSet,
};
pub use matching::{
    alpha, alpha_preserving_spanning_tree, has_perfect_matching, konig_cover, matching_core, maximum_matching,
    maximum_stable_set, stable_core, Matching, StableSet, VertexCover,
};
pub use oracle::{Oracle, OracleBudget};
pub use stability::{
    bistable_decomposition, ear_decomposition, is_alpha_minus, is_alpha_plus, is_alpha_stable, is_bistable,
    strong_unique_independence, unique_stability_system, BistableDecomposition, EarDecomposition, StabilityReport,
};
