//! Conversion of labels into equivalent basic graphs.
//!
//! Operational rules replace a constant or operation by the graph it
//! denotes; structural rules push complements through slices and graphs and
//! splice graph-labeled arcs into their slice. A fixed strategy picks the
//! next redex, so conversion is deterministic and every step is recorded
//! with its position for later replay.

mod apply;
mod rules;
mod strategy;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Label, Slice};

pub use apply::{apply_at, lift};
pub use rules::{rewrite_arc, rewrite_label};
pub use strategy::{next_redex, normalize, to_basic, to_basic_inclusion, DEFAULT_STEP_LIMIT};

/// Conversion rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleId {
    /// `0` becomes the empty graph.
    Bot,
    /// `1` becomes the arcless two-node slice.
    Top,
    /// `I` becomes the arcless one-node slice.
    Id,
    /// `D` becomes `x ~[x] y`.
    Di,
    /// `~~L` becomes `L`.
    DoubleCompl,
    /// `L^` becomes `y L x`.
    Conv,
    /// `L & K` becomes `x L y, x K y`.
    Meet,
    /// `L | K` becomes the two slices `x L y` and `x K y`.
    Join,
    /// `L;K` becomes `x L z, z K y`.
    RelProd,
    /// `L!K` becomes `x ~[x ~L z, z ~K y] y`.
    RelSum,
    /// An arc labeled by a graph (or slice) is replaced by gluing each
    /// member in its place.
    GraphArc,
    /// `~G` becomes the slice with one arc `x ~S y` per member `S`.
    ComplGraph,
    /// `~{S}` for a small slice `S` with distinct input and output becomes
    /// one single-arc slice per arc of `S`, with the label complemented.
    ComplSmallSlice,
    /// `~r` becomes `~[x r y]`.
    ComplName,
    /// An arc `u ~G v` is replaced by the arcs `u ~S v` for `S` in `G`.
    DerivedComplGraphArc,
}

impl RuleId {
    pub const ALL: [RuleId; 15] = [
        RuleId::Bot,
        RuleId::Top,
        RuleId::Id,
        RuleId::Di,
        RuleId::DoubleCompl,
        RuleId::Conv,
        RuleId::Meet,
        RuleId::Join,
        RuleId::RelProd,
        RuleId::RelSum,
        RuleId::GraphArc,
        RuleId::ComplGraph,
        RuleId::ComplSmallSlice,
        RuleId::ComplName,
        RuleId::DerivedComplGraphArc,
    ];

    /// Rules that rewrite a whole slice around one of its arcs rather than a
    /// label.
    pub fn acts_on_arc(self) -> bool {
        matches!(self, RuleId::GraphArc | RuleId::DerivedComplGraphArc)
    }
}

/// One step of a path into a graph or label.
///
/// `Slice(i)` selects a member of a graph, `Arc(j)` an arc of a slice (in
/// arc order) and `Operand(k)` an operand of an operation label. An embedded
/// slice label is entered with `Arc(j)` and an embedded graph label with
/// `Slice(i)` (members in canonical order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathStep {
    Slice(usize),
    Arc(usize),
    Operand(usize),
}

/// Redex or contractum of a step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fragment {
    Label(Label),
    Slice(Slice),
    Slices(Vec<Slice>),
}

/// A rule application at a position of a graph. For label rules `before`
/// and `after` are labels; for arc rules they are the containing slice and
/// the slices replacing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversionStep {
    pub rule: RuleId,
    pub position: Vec<PathStep>,
    pub before: Fragment,
    pub after: Fragment,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConversionError {
    #[error("rule {rule:?} does not apply: {reason}")]
    NoRedex { rule: RuleId, reason: String },
    #[error("position does not exist: {0}")]
    BadPosition(String),
    #[error("conversion did not finish within {0} steps")]
    StepLimit(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A recorded conversion: the starting graph, the steps and the basic graph
/// they produce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversionTrace {
    pub start: Graph,
    pub steps: Vec<ConversionStep>,
    pub result: Graph,
}

impl ConversionTrace {
    /// Converts `start` with the fixed strategy.
    pub fn record(start: Graph, limit: usize) -> Result<Self, ConversionError> {
        let (result, steps) = normalize(start.clone(), limit)?;
        Ok(ConversionTrace { start, steps, result })
    }

    /// Replays the steps, returning the index of the first step that does
    /// not reproduce, or `steps.len()` when the result differs or is not
    /// basic.
    pub fn verify(&self) -> Result<(), (usize, String)> {
        let mut g = self.start.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let (next, again) = apply_at(&g, &step.position, step.rule).map_err(|e| (i, e.to_string()))?;
            if &again != step {
                return Err((i, "recorded redex or contractum differs from replay".into()));
            }
            g = next;
        }
        let end = self.steps.len();
        if next_redex(&g).is_some() {
            return Err((end, "conversion is incomplete".into()));
        }
        if g != self.result {
            return Err((end, "result differs from replay".into()));
        }
        Ok(())
    }
}
