//! Global rigidity of generic direction-length frameworks in the plane.
//!
//! A mixed graph has direction edges (the line through the endpoints is
//! fixed) and length edges (their distance is fixed). This crate decides
//! whether every generic realisation of such a graph is globally rigid and
//! returns a certificate that can be checked independently.
//!
//! ```
//! use rigikit_core::{decide_global_rigidity, fixtures, Settings};
//!
//! let verdict = decide_global_rigidity(&fixtures::mc5(), &Settings::default());
//! assert!(verdict.answer.is_yes());
//! ```

pub mod bounded;
pub mod corpus;
pub mod decide;
pub mod exact;
pub mod field;
pub mod fixtures;
pub mod graph;
pub mod matroid;
pub mod oracle;
pub mod packing;
pub mod realize;
pub mod reduce;
pub mod union_find;

pub use bounded::{augment, bounded_components, is_bounded, BoundedDecomposition};
pub use decide::{
    conditions_report, decide_global_rigidity, decide_sparse, decide_with, verify, Answer, Certificate,
    ConditionsReport, DecideOptions, SparseVerdict, Verdict,
};
pub use exact::Rational;
pub use graph::{
    contract_length_edges, contract_subgraph, is_2connected, is_direction_balanced, parse_graph, Edge, EdgeKind,
    EdgeRef, GraphError, MixedGraph, Multigraph,
};
pub use matroid::{
    generic_rank, is_independent, is_m_connected, is_redundantly_rigid, is_rigid, m_components, MatroidView, Settings,
};
pub use packing::{spanning_tree_packing, PackingResult, PackingVerdict};
pub use realize::{
    are_congruent, are_equivalent, random_generic_framework, random_minimally_rigid, realize_from_slopes,
    rigidity_matrix, Framework, SlopeProblem, SlopeRealization,
};
pub use reduce::{
    check_reduction_to, find_r1, find_r2, is_direction_irreducible, reduce_fully, ReductionStep, ReductionTrace,
};
