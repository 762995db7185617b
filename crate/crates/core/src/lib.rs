//! Subgroup separability of right-angled Artin groups.
//!
//! The RAAG of a finite simplicial graph is subgroup separable exactly when the
//! graph has no induced path of length three and no induced square. This crate
//! decides that from the graph, returning either an obstruction witness or the
//! free-product / direct-product structure of the group, and ships the
//! supporting machinery: the RAAG word problem, the subgroup `L_H` of
//! `F_n × F_n` built from a finite presentation, coset enumeration, and a
//! search for finite quotients separating elements from cyclic subgroups.

pub mod decomposition;
pub mod error;
pub mod graph;
pub mod michailova;
pub mod obstruction;
pub mod perm;
pub mod separation;
pub mod words;

pub use decomposition::{decompose, render_structure, DecompositionTree};
pub use error::{Error, Result};
pub use graph::{enumerate_graphs, parse_graph, parse_graph_with, Graph, VertexSet};
pub use michailova::{
    lh_contains, michailova_generators, parse_presentation, todd_coxeter, word_trivial_in_h,
    CosetTable, FinitePresentation, FreeGroupOracle, PairWord, WordProblemOracle,
};
pub use obstruction::{
    dominating_vertex, find_induced_path3, find_induced_square, separability_verdict,
    ObstructionKind, ObstructionWitness, Verdict,
};
pub use perm::Perm;
pub use separation::{separate_cyclic, verify_witness, Budget, FiniteQuotientWitness, Separation};
pub use words::{normal_form, parse_word, raag_presentation, words_equal, GroupPresentation, Letter, Word};
