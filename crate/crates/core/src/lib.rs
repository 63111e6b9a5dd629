//! Construction of concept (Galois) lattices from a binary relation.
//!
//! The central builder processes concepts in breadth-first order and
//! computes all children of a concept in one pass ([`engine::sprout`]) over
//! adjacency lists that are condensed per parent ([`engine::condense`]).
//! Two variants sit next to it: a concepts-only enumerator and an iceberg
//! (frequent closed itemset) lattice builder. A brute-force [`oracle`] is
//! provided for verification.

pub mod builders;
pub mod context;
pub mod engine;
mod error;
pub mod formats;
pub mod generate;
pub mod oracle;
pub mod verify;

pub use builders::{
    build_iceberg, build_lattice_bfs_basic, build_lattice_two_level, complete_bottom,
    enumerate_concepts, Algorithm, BottomMode, BuildStats, ConceptLattice, IcebergMode,
    LatticeBuilder,
};
pub use context::{AttrId, AttrSet, Concept, Context, ObjId, ObjectSet};
pub use error::{Error, Result};
