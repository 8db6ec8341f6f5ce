//! Refutation prover for inclusions between binary-relation terms.
//!
//! An inclusion `L <= K` is turned into the two-arc slice for `L & ~K`,
//! converted into a graph of basic slices, and expanded until every slice is
//! visibly contradictory (a proof) or a slice's natural model falsifies the
//! goal (a countermodel).

pub mod conversion;
pub mod dot;
pub mod engine;
pub mod graph;
pub mod morphism;
pub mod semantics;
pub mod term;
