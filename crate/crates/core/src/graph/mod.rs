//! Labels, arcs, drafts, slices and graphs.
//!
//! A slice is a finite draft with distinguished input and output nodes and
//! denotes the relation formed by the (input, output) values of the
//! assignments satisfying its arcs. A graph is a finite set of alternative
//! slices. Slices and graphs embedded in labels are kept in canonical form,
//! so structural equality on labels is equality up to isomorphism.

mod canon;
mod construct;
mod measure;
mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc as Shared;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::term::Term;

pub use canon::{canonical_labeling, canonicalize};
pub use construct::{
    add_arc, difference_slice, eliminate_id_arc, glue_graph, glue_slice, graph_of_slice,
    is_small, single_arc_slice, slice_of_graph,
};
pub use measure::{
    embedded_slices, embedded_slices_draft, embedded_slices_label, is_basic_arc, is_basic_graph,
    is_basic_label, is_basic_slice, rank_draft, rank_label, rank_slice,
};
pub use text::{render_label, render_slice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("arc endpoint {0} is not a node of the draft")]
    DanglingArc(NodeId),
    #[error("distinguished node {0} is not a node of the draft")]
    MissingEndpoint(NodeId),
    #[error("slice is not small: its nodes are not exactly its input and output")]
    NotSmall,
    #[error("arc is not part of the slice")]
    ArcNotFound,
    #[error("arc is not labeled by the identity constant")]
    NotIdentityArc,
    #[error("object is not basic")]
    NotBasic,
}

/// Node identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl NodeId {
    pub fn next(self) -> NodeId {
        NodeId(self.0 + 1)
    }
}

/// A slice in canonical form, shared between the labels that embed it.
#[derive(Clone)]
pub struct SliceLit(Shared<Slice>);

impl SliceLit {
    pub fn new(s: &Slice) -> Self {
        SliceLit(Shared::new(canonicalize(s)))
    }

    pub fn slice(&self) -> &Slice {
        &self.0
    }

    pub(crate) fn ptr(&self) -> usize {
        Shared::as_ptr(&self.0) as usize
    }
}

impl std::ops::Deref for SliceLit {
    type Target = Slice;
    fn deref(&self) -> &Slice {
        &self.0
    }
}

impl PartialEq for SliceLit {
    fn eq(&self, other: &Self) -> bool {
        Shared::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for SliceLit {}

impl PartialOrd for SliceLit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SliceLit {
    fn cmp(&self, other: &Self) -> Ordering {
        if Shared::ptr_eq(&self.0, &other.0) {
            Ordering::Equal
        } else {
            self.0.cmp(&other.0)
        }
    }
}

impl Hash for SliceLit {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for SliceLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for SliceLit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SliceLit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Slice::deserialize(d).map(|s| SliceLit::new(&s))
    }
}

/// A graph in canonical form: canonical member slices, sorted, no repeats.
#[derive(Clone)]
pub struct GraphLit(Shared<Vec<Slice>>);

impl GraphLit {
    pub fn new<'a>(slices: impl IntoIterator<Item = &'a Slice>) -> Self {
        let set: BTreeSet<Slice> = slices.into_iter().map(canonicalize).collect();
        GraphLit(Shared::new(set.into_iter().collect()))
    }

    pub fn slices(&self) -> &[Slice] {
        &self.0
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_slices(self.0.iter().cloned())
    }
}

impl PartialEq for GraphLit {
    fn eq(&self, other: &Self) -> bool {
        Shared::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for GraphLit {}

impl PartialOrd for GraphLit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GraphLit {
    fn cmp(&self, other: &Self) -> Ordering {
        if Shared::ptr_eq(&self.0, &other.0) {
            Ordering::Equal
        } else {
            self.0.cmp(&other.0)
        }
    }
}

impl Hash for GraphLit {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for GraphLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl Serialize for GraphLit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GraphLit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<Slice>::deserialize(d).map(|v| GraphLit::new(&v))
    }
}

/// Arc label: a relational expression that may embed slices and graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Name(String),
    Bottom,
    Top,
    Id,
    Di,
    Compl(Box<Label>),
    Conv(Box<Label>),
    Meet(Box<Label>, Box<Label>),
    Join(Box<Label>, Box<Label>),
    RelProd(Box<Label>, Box<Label>),
    RelSum(Box<Label>, Box<Label>),
    Slice(SliceLit),
    Graph(GraphLit),
}

impl Label {
    pub fn name(n: impl Into<String>) -> Label {
        Label::Name(n.into())
    }

    pub fn compl(self) -> Label {
        Label::Compl(Box::new(self))
    }

    pub fn conv(self) -> Label {
        Label::Conv(Box::new(self))
    }

    pub fn meet(self, other: Label) -> Label {
        Label::Meet(Box::new(self), Box::new(other))
    }

    pub fn join(self, other: Label) -> Label {
        Label::Join(Box::new(self), Box::new(other))
    }

    pub fn rel_prod(self, other: Label) -> Label {
        Label::RelProd(Box::new(self), Box::new(other))
    }

    pub fn rel_sum(self, other: Label) -> Label {
        Label::RelSum(Box::new(self), Box::new(other))
    }

    pub fn slice(s: &Slice) -> Label {
        Label::Slice(SliceLit::new(s))
    }

    pub fn graph<'a>(slices: impl IntoIterator<Item = &'a Slice>) -> Label {
        Label::Graph(GraphLit::new(slices))
    }

    /// `~T` for a slice `T`.
    pub fn compl_slice(s: &Slice) -> Label {
        Label::slice(s).compl()
    }

    /// The embedded slice `T` when the label is `~T`.
    pub fn as_compl_slice(&self) -> Option<&SliceLit> {
        match self {
            Label::Compl(inner) => match &**inner {
                Label::Slice(t) => Some(t),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    pub(crate) fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Label::Name(n) => {
                out.insert(n.clone());
            }
            Label::Bottom | Label::Top | Label::Id | Label::Di => {}
            Label::Compl(l) | Label::Conv(l) => l.collect_names(out),
            Label::Meet(a, b) | Label::Join(a, b) | Label::RelProd(a, b) | Label::RelSum(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Label::Slice(s) => s.collect_names(out),
            Label::Graph(g) => {
                for s in g.slices() {
                    s.collect_names(out);
                }
            }
        }
    }
}

impl From<&Term> for Label {
    fn from(t: &Term) -> Label {
        match t {
            Term::Name(n) => Label::Name(n.clone()),
            Term::Bottom => Label::Bottom,
            Term::Top => Label::Top,
            Term::Id => Label::Id,
            Term::Di => Label::Di,
            Term::Compl(a) => Label::from(&**a).compl(),
            Term::Conv(a) => Label::from(&**a).conv(),
            Term::Meet(a, b) => Label::from(&**a).meet(Label::from(&**b)),
            Term::Join(a, b) => Label::from(&**a).join(Label::from(&**b)),
            Term::RelProd(a, b) => Label::from(&**a).rel_prod(Label::from(&**b)),
            Term::RelSum(a, b) => Label::from(&**a).rel_sum(Label::from(&**b)),
        }
    }
}

impl From<Term> for Label {
    fn from(t: Term) -> Label {
        Label::from(&t)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_label(self))
    }
}

/// Labeled directed arc `source label target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub source: NodeId,
    pub label: Label,
    pub target: NodeId,
}

impl Arc {
    pub fn new(source: NodeId, label: Label, target: NodeId) -> Self {
        Arc {
            source,
            label,
            target,
        }
    }

    fn renamed(&self, f: impl Fn(NodeId) -> NodeId) -> Arc {
        Arc::new(f(self.source), self.label.clone(), f(self.target))
    }
}

/// Finite set of nodes and arcs over them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DraftRepr", into = "DraftRepr")]
pub struct Draft {
    nodes: BTreeSet<NodeId>,
    arcs: BTreeSet<Arc>,
}

#[derive(Serialize, Deserialize)]
struct DraftRepr {
    nodes: Vec<NodeId>,
    arcs: Vec<Arc>,
}

impl TryFrom<DraftRepr> for Draft {
    type Error = GraphError;
    fn try_from(r: DraftRepr) -> Result<Self, GraphError> {
        Draft::new(r.nodes, r.arcs)
    }
}

impl From<Draft> for DraftRepr {
    fn from(d: Draft) -> Self {
        DraftRepr {
            nodes: d.nodes.into_iter().collect(),
            arcs: d.arcs.into_iter().collect(),
        }
    }
}

impl Draft {
    pub fn new(
        nodes: impl IntoIterator<Item = NodeId>,
        arcs: impl IntoIterator<Item = Arc>,
    ) -> Result<Self, GraphError> {
        let nodes: BTreeSet<NodeId> = nodes.into_iter().collect();
        let arcs: BTreeSet<Arc> = arcs.into_iter().collect();
        for a in &arcs {
            for end in [a.source, a.target] {
                if !nodes.contains(&end) {
                    return Err(GraphError::DanglingArc(end));
                }
            }
        }
        Ok(Draft { nodes, arcs })
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn arcs(&self) -> &BTreeSet<Arc> {
        &self.arcs
    }

    /// Adds an arc together with its endpoints.
    pub fn insert_arc(&mut self, a: Arc) {
        self.nodes.insert(a.source);
        self.nodes.insert(a.target);
        self.arcs.insert(a);
    }

    pub fn insert_node(&mut self, n: NodeId) {
        self.nodes.insert(n);
    }

    pub fn max_node(&self) -> Option<NodeId> {
        self.nodes.iter().next_back().copied()
    }

    fn renamed(&self, f: impl Fn(NodeId) -> NodeId) -> Draft {
        Draft {
            nodes: self.nodes.iter().map(|&n| f(n)).collect(),
            arcs: self.arcs.iter().map(|a| a.renamed(&f)).collect(),
        }
    }
}

/// Draft with an input and an output node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SliceRepr", into = "SliceRepr")]
pub struct Slice {
    draft: Draft,
    input: NodeId,
    output: NodeId,
}

#[derive(Serialize, Deserialize)]
struct SliceRepr {
    nodes: Vec<NodeId>,
    arcs: Vec<Arc>,
    input: NodeId,
    output: NodeId,
}

impl TryFrom<SliceRepr> for Slice {
    type Error = GraphError;
    fn try_from(r: SliceRepr) -> Result<Self, GraphError> {
        Slice::new(Draft::new(r.nodes, r.arcs)?, r.input, r.output)
    }
}

impl From<Slice> for SliceRepr {
    fn from(s: Slice) -> Self {
        SliceRepr {
            nodes: s.draft.nodes.into_iter().collect(),
            arcs: s.draft.arcs.into_iter().collect(),
            input: s.input,
            output: s.output,
        }
    }
}

impl Slice {
    pub fn new(draft: Draft, input: NodeId, output: NodeId) -> Result<Self, GraphError> {
        for end in [input, output] {
            if !draft.nodes.contains(&end) {
                return Err(GraphError::MissingEndpoint(end));
            }
        }
        Ok(Slice {
            draft,
            input,
            output,
        })
    }

    /// Slice whose nodes are the arc endpoints plus input and output.
    pub fn from_arcs(arcs: impl IntoIterator<Item = Arc>, input: NodeId, output: NodeId) -> Self {
        let mut draft = Draft::default();
        draft.insert_node(input);
        draft.insert_node(output);
        for a in arcs {
            draft.insert_arc(a);
        }
        Slice {
            draft,
            input,
            output,
        }
    }

    pub fn draft(&self) -> &Draft {
        &self.draft
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.draft.nodes
    }

    pub fn arcs(&self) -> &BTreeSet<Arc> {
        &self.draft.arcs
    }

    pub fn input(&self) -> NodeId {
        self.input
    }

    pub fn output(&self) -> NodeId {
        self.output
    }

    /// The `j`-th arc in arc order.
    pub fn arc(&self, j: usize) -> Option<&Arc> {
        self.draft.arcs.iter().nth(j)
    }

    pub fn arc_index(&self, a: &Arc) -> Option<usize> {
        self.draft.arcs.iter().position(|b| b == a)
    }

    pub fn has_arc(&self, a: &Arc) -> bool {
        self.draft.arcs.contains(a)
    }

    pub fn max_node(&self) -> NodeId {
        self.draft.max_node().expect("a slice has at least one node")
    }

    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    pub(crate) fn collect_names(&self, out: &mut BTreeSet<String>) {
        for a in &self.draft.arcs {
            a.label.collect_names(out);
        }
    }

    /// Applies a node renaming to every node, arc and distinguished node.
    /// The map need not be injective.
    pub fn rename(&self, f: impl Fn(NodeId) -> NodeId) -> Slice {
        Slice {
            draft: self.draft.renamed(&f),
            input: f(self.input),
            output: f(self.output),
        }
    }

    pub fn rename_with(&self, map: &BTreeMap<NodeId, NodeId>) -> Slice {
        self.rename(|n| map.get(&n).copied().unwrap_or(n))
    }

    pub(crate) fn without_arc(&self, a: &Arc) -> Slice {
        let mut s = self.clone();
        s.draft.arcs.remove(a);
        s
    }

    pub(crate) fn with_arcs(&self, arcs: impl IntoIterator<Item = Arc>) -> Slice {
        let mut s = self.clone();
        for a in arcs {
            s.draft.insert_arc(a);
        }
        s
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_slice(self))
    }
}

/// Finite set of alternative slices.
///
/// Member slices keep their node names and insertion order; a slice that is
/// isomorphic to an existing member is not added again. Equality compares
/// the sets of canonical forms.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    slices: Vec<Slice>,
    keys: Vec<Slice>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn from_slices(slices: impl IntoIterator<Item = Slice>) -> Self {
        let mut g = Graph::new();
        for s in slices {
            g.insert(s);
        }
        g
    }

    /// Adds a slice unless an isomorphic one is present.
    pub fn insert(&mut self, s: Slice) -> bool {
        let key = canonicalize(&s);
        if self.keys.contains(&key) {
            return false;
        }
        self.slices.push(s);
        self.keys.push(key);
        true
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Slice> {
        self.slices.iter()
    }

    /// Sorted canonical forms of the members.
    pub fn canonical_slices(&self) -> Vec<Slice> {
        let mut keys = self.keys.clone();
        keys.sort();
        keys
    }

    pub fn contains(&self, s: &Slice) -> bool {
        self.keys.contains(&canonicalize(s))
    }

    /// Replaces the member at `index` by `replacement`, keeping the order of
    /// the other members and inserting the new slices at that position.
    /// Replacement slices isomorphic to a remaining member are dropped.
    pub fn replace(&self, index: usize, replacement: impl IntoIterator<Item = Slice>) -> Graph {
        let mut out = Graph::new();
        for s in &self.slices[..index] {
            out.insert(s.clone());
        }
        let tail: Vec<Slice> = self.slices[index + 1..].to_vec();
        let tail_keys: Vec<Slice> = self.keys[index + 1..].to_vec();
        for s in replacement {
            let key = canonicalize(&s);
            if !tail_keys.contains(&key) && !out.keys.contains(&key) {
                out.slices.push(s);
                out.keys.push(key);
            }
        }
        for s in tail {
            out.insert(s);
        }
        out
    }

    pub fn remove(&self, index: usize) -> Graph {
        self.replace(index, std::iter::empty())
    }

    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for s in &self.slices {
            s.collect_names(&mut out);
        }
        out
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_slices() == other.canonical_slices()
    }
}

impl Eq for Graph {}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.slices.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vec::<Slice>::deserialize(d).map(Graph::from_slices)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.slices.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}
