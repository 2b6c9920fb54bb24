//! Exact tools for k-generators of the power set of [n]: families in which
//! every subset of [n] is a union of at most k pairwise disjoint members.
//!
//! The crate builds the balanced-partition generator, decides the generator
//! and base properties, searches for minimum generators at small n, and
//! evaluates the clique densities and counting bounds that govern how small a
//! generator can be. All counts are exact integers and all densities exact
//! rationals.

pub mod arith;
pub mod bounds;
pub mod error;
pub mod family;
pub mod format;
pub mod generator;
pub mod kneser;
pub mod limits;
pub mod search;

pub use bounds::{
    analytic_union_bound, bound_table, coverage_inequality_check, lemma4_bound,
    small_union_probability, union_bound_check, BoundParams, BoundRow, CoverageReport, Estimate,
    Probability, SampleMode, UnionBoundReport,
};
pub use error::{Error, Result};
pub use family::{
    canonical_generator, canonical_size, make_family, trivial_lower_bound, CanonicalPartition,
    SetFamily, SubsetMask, MAX_GROUND,
};
pub use generator::{
    count_disjoint_tuples, decompose, is_k_base, is_k_generator, reachable_layers, Decomposition,
    GeneratorVerdict, ReachableLayers,
};
pub use kneser::{
    clique_density, count_cliques, dense_subset_fraction, disjointness_graph, erdos_max_check,
    find_blowup, turan_blowup_graph, turan_clique_closed_form, turan_eta, BlowupSpec,
    DenseFraction, DenseMode, DisjointnessGraph, ErdosCheck, Graph, TuranParams,
};
pub use limits::Limits;
pub use search::{min_generator_size, verify_conjecture_range, SearchReport};
