//! The expansion and erasure rules and the candidate pool.

use std::collections::{BTreeMap, BTreeSet};

use super::initial_graph;
use crate::conversion::{normalize, ConversionError};
use crate::graph::{add_arc, embedded_slices, glue_slice, rank_slice, Arc, Graph, Label, NodeId, Slice, SliceLit};
use crate::morphism::{find_morphism, is_erasable};
use crate::term::Inclusion;

/// Basic slices whose extensions must be empty when the hypotheses hold:
/// the slices of each hypothesis's converted difference slice, deduplicated
/// up to isomorphism in order.
pub fn compile_hypotheses(hyps: &[Inclusion], step_budget: usize) -> Result<Vec<Slice>, ConversionError> {
    let mut out = Graph::new();
    for h in hyps {
        let (g, _) = normalize(initial_graph(h), step_budget)?;
        for s in g.iter() {
            out.insert(s.clone());
        }
    }
    Ok(out.slices().to_vec())
}

/// The two slices replacing `s` when expanding at `(u, v)` with `t`: the
/// glue and `s` with `u ~t v` added.
pub fn expand_slice(s: &Slice, u: NodeId, v: NodeId, t: &Slice) -> [Slice; 2] {
    [
        glue_slice(s, u, v, t),
        add_arc(s, Arc::new(u, Label::compl_slice(t), v)),
    ]
}

/// Replaces member `index` of `g` by its expansion at `(u, v)` with `t`.
pub fn expand(g: &Graph, index: usize, u: NodeId, v: NodeId, t: &Slice) -> Graph {
    g.replace(index, expand_slice(&g.slices()[index], u, v, t))
}

/// `g` without the slices some hypothesis slice maps into.
pub fn erase(g: &Graph, hyps: &[Slice]) -> Graph {
    Graph::from_slices(g.iter().filter(|s| is_erasable(s, hyps).is_none()).cloned())
}

/// One way to expand a slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub u: NodeId,
    pub v: NodeId,
    pub template: SliceLit,
}

/// Expansions worth trying on a basic slice, cheapest first.
///
/// Templates are the embedded slices of `s` and of `extra` (canonical
/// forms), ordered by rank then canonical order; pairs follow node order.
/// A pair is skipped when `s` already has the arc `u ~T v`, or when `T`
/// already maps into `s` with input at `u` and output at `v`: either way
/// one side of the expansion adds nothing.
pub fn candidate_expansions(s: &Slice, extra: &[Slice]) -> Vec<Candidate> {
    let mut pool: BTreeSet<SliceLit> = embedded_slices(s).unwrap_or_default();
    for h in extra {
        pool.extend(embedded_slices(h).unwrap_or_default());
    }
    let mut templates: Vec<(usize, SliceLit)> = pool
        .into_iter()
        .map(|t| (rank_slice(&t).unwrap_or(usize::MAX), t))
        .collect();
    templates.sort();
    let nodes: Vec<NodeId> = s.nodes().iter().copied().collect();
    let mut out = Vec::new();
    for (_, t) in templates {
        for &u in &nodes {
            for &v in &nodes {
                if s.has_arc(&Arc::new(u, Label::Slice(t.clone()).compl(), v)) {
                    continue;
                }
                let mut pinned = BTreeMap::new();
                pinned.insert(t.input(), u);
                pinned.insert(t.output(), v);
                let consistent = t.input() != t.output() || u == v;
                if consistent && find_morphism(t.draft(), s.draft(), &pinned).is_some() {
                    continue;
                }
                out.push(Candidate {
                    u,
                    v,
                    template: t.clone(),
                });
            }
        }
    }
    out
}
