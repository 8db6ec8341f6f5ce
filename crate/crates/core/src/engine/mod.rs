//! Proof search over basic graphs.
//!
//! A goal is converted to a basic graph whose slices are closed one by one:
//! a slice closes when it is zero, when a hypothesis slice maps into it, or
//! when both slices of one of its expansions close. The search deepens the
//! expansion bound iteratively and probes every open slice's natural model
//! for a countermodel.

mod expand;
mod search;
mod verify;

use serde::{Deserialize, Serialize};

use crate::conversion::{ConversionStep, DEFAULT_STEP_LIMIT};
use crate::graph::{Graph, NodeId, Slice};
use crate::morphism::Morphism;
use crate::semantics::{Model, DEFAULT_ORACLE_BITS};
use crate::term::Inclusion;

pub use expand::{candidate_expansions, compile_hypotheses, erase, expand, expand_slice, Candidate};
pub use search::prove;
pub use verify::{verify_derivation, VerifyError};

/// Version tag of the derivation trace format.
pub const TRACE_VERSION: u32 = 1;

/// How hypotheses are used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisMode {
    /// Slices a hypothesis maps into are erased by a derivation step.
    #[default]
    Erase,
    /// Such slices stay in the final graph, which must be zero or erasable
    /// slice by slice.
    Hzero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProveConfig {
    /// Largest number of nested expansions along one branch.
    pub max_depth: usize,
    /// Largest model the exhaustive countermodel search tries.
    pub model_max: usize,
    pub mode: HypothesisMode,
    /// Ceiling on conversion steps for the goal and each hypothesis.
    pub step_budget: usize,
    /// Ceiling on slices visited by the expansion search.
    pub search_budget: usize,
    /// Ceiling on names·size² for the exhaustive countermodel search.
    pub oracle_bits: usize,
}

impl Default for ProveConfig {
    fn default() -> Self {
        ProveConfig {
            max_depth: 4,
            model_max: 3,
            mode: HypothesisMode::Erase,
            step_budget: DEFAULT_STEP_LIMIT,
            search_budget: 20_000,
            oracle_bits: DEFAULT_ORACLE_BITS,
        }
    }
}

/// A derivation step after conversion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    Conversion(ConversionStep),
    /// Replaces member `slice` by the glue of `template` at `(u, v)` and by
    /// the slice with the arc `u ~template v` added.
    Expansion {
        slice: usize,
        u: NodeId,
        v: NodeId,
        template: Slice,
        before: Slice,
        after: Vec<Slice>,
    },
    /// Removes member `slice`, into which hypothesis slice `hypothesis`
    /// maps by `morphism`.
    Erasure {
        slice: usize,
        hypothesis: usize,
        morphism: Morphism,
        before: Slice,
    },
}

/// What the final graph of a derivation is claimed to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// Every slice is zero.
    Zero,
    /// Every slice is zero or a hypothesis slice maps into it.
    Hzero,
}

/// A replayable proof: conversion of the goal's difference slice, then
/// expansions and erasures, ending in a graph that is zero or H-zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub version: u32,
    pub goal: Inclusion,
    pub hypotheses: Vec<Inclusion>,
    pub hypothesis_slices: Vec<Slice>,
    pub mode: HypothesisMode,
    pub steps: Vec<Step>,
    pub final_graph: Graph,
    pub claim: Claim,
}

impl Derivation {
    pub fn expansions(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Expansion { .. }))
            .count()
    }

    pub fn erasures(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Erasure { .. }))
            .count()
    }

    pub fn conversions(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Conversion(_)))
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Proved(Derivation),
    /// A model where every hypothesis holds and `pair` is in the goal's
    /// left side but not its right side.
    Countermodel { model: Model, pair: (usize, usize) },
    /// Neither outcome within the bounds.
    Unknown {
        depth: usize,
        frontier: usize,
        reason: String,
    },
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved(_))
    }

    pub fn is_countermodel(&self) -> bool {
        matches!(self, Verdict::Countermodel { .. })
    }
}

pub(crate) fn initial_graph(goal: &Inclusion) -> Graph {
    use crate::graph::{difference_slice, Label};
    Graph::from_slices([difference_slice(Label::from(&goal.lhs), Label::from(&goal.rhs))])
}
