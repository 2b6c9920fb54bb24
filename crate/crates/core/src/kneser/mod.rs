//! Disjointness graphs and the clique, Turán and blow-up machinery around them.

pub mod blowup;
pub mod cliques;
pub mod dense;
pub mod graph;
pub mod turan;

pub use blowup::{find_blowup, is_blowup, BlowupSpec};
pub use cliques::{clique_counts_upto, clique_density, count_cliques};
pub use dense::{dense_subset_fraction, DenseFraction, DenseMode};
pub use graph::{disjointness_graph, DisjointnessGraph, Graph};
pub use turan::{
    balanced_parts, complete_multipartite, erdos_max_check, multipartite_clique_count,
    turan_blowup_graph, turan_clique_closed_form, turan_eta, ErdosCheck, TuranParams,
};
