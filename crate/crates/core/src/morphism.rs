//! Arc-preserving node maps between drafts, and the zero and erasability
//! tests built on them.
//!
//! A slice is zero when it has an arc `u ~T v` and the draft of `T` maps
//! into the slice's draft with `T`'s input on `u` and output on `v`. A slice
//! is erasable under hypothesis slices `H` when the draft of some member of
//! `H` maps into it, with no constraint on distinguished nodes.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::graph::{Arc, Draft, Graph, Label, NodeId, Slice};

/// Node map from a source draft into a target draft. Serialized as a list
/// of `[source, target]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<(NodeId, NodeId)>", into = "Vec<(NodeId, NodeId)>")]
pub struct Morphism {
    pub map: BTreeMap<NodeId, NodeId>,
}

impl From<Vec<(NodeId, NodeId)>> for Morphism {
    fn from(pairs: Vec<(NodeId, NodeId)>) -> Self {
        Morphism {
            map: pairs.into_iter().collect(),
        }
    }
}

impl From<Morphism> for Vec<(NodeId, NodeId)> {
    fn from(m: Morphism) -> Self {
        m.map.into_iter().collect()
    }
}

impl Morphism {
    pub fn apply(&self, n: NodeId) -> NodeId {
        self.map[&n]
    }
}

/// Whether `map` is total on `src` and sends every arc of `src` to an arc of
/// `dst`.
pub fn is_morphism(src: &Draft, dst: &Draft, map: &BTreeMap<NodeId, NodeId>) -> bool {
    src.nodes()
        .iter()
        .all(|n| map.get(n).is_some_and(|m| dst.nodes().contains(m)))
        && src.arcs().iter().all(|a| {
            dst.arcs()
                .contains(&Arc::new(map[&a.source], a.label.clone(), map[&a.target]))
        })
}

struct Index {
    /// (label, source) -> targets
    out: HashMap<(usize, NodeId), Vec<NodeId>>,
    /// (label, target) -> sources
    inc: HashMap<(usize, NodeId), Vec<NodeId>>,
    arcs: HashSet<(NodeId, usize, NodeId)>,
}

struct Search<'a> {
    order: Vec<NodeId>,
    /// Per position: arcs (source, label, target) whose later endpoint is
    /// the node at that position.
    checks: Vec<Vec<(NodeId, usize, NodeId)>>,
    index: Index,
    dst_nodes: &'a [NodeId],
}

impl Search<'_> {
    fn consistent(&self, k: usize, map: &HashMap<NodeId, NodeId>) -> bool {
        self.checks[k]
            .iter()
            .all(|&(s, l, t)| self.index.arcs.contains(&(map[&s], l, map[&t])))
    }

    fn candidates(&self, k: usize, map: &HashMap<NodeId, NodeId>) -> Vec<NodeId> {
        let node = self.order[k];
        for &(s, l, t) in &self.checks[k] {
            let list = if s == node && t != node {
                self.index.inc.get(&(l, map[&t]))
            } else if t == node && s != node {
                self.index.out.get(&(l, map[&s]))
            } else {
                continue;
            };
            let mut c = list.cloned().unwrap_or_default();
            c.sort_unstable();
            c.dedup();
            return c;
        }
        self.dst_nodes.to_vec()
    }

    fn run(&self, k: usize, map: &mut HashMap<NodeId, NodeId>, pinned: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let node = self.order[k];
        if k < pinned {
            return self.consistent(k, map) && self.run(k + 1, map, pinned);
        }
        for c in self.candidates(k, map) {
            map.insert(node, c);
            if self.consistent(k, map) && self.run(k + 1, map, pinned) {
                return true;
            }
        }
        map.remove(&node);
        false
    }
}

/// First morphism `src -> dst` extending `pinned`, if any.
///
/// Pinned nodes are placed first, then repeatedly the node with most arcs
/// into placed nodes (ties: higher degree, then smaller id). Candidates for a
/// node come from the target arcs matching one of its arcs into placed
/// nodes.
pub fn find_morphism(src: &Draft, dst: &Draft, pinned: &BTreeMap<NodeId, NodeId>) -> Option<Morphism> {
    for (s, t) in pinned {
        if !src.nodes().contains(s) || !dst.nodes().contains(t) {
            return None;
        }
    }
    let mut labels: HashMap<&Label, usize> = HashMap::new();
    for a in dst.arcs() {
        let next = labels.len();
        labels.entry(&a.label).or_insert(next);
    }
    let mut src_arcs = Vec::with_capacity(src.arcs().len());
    for a in src.arcs() {
        let &l = labels.get(&a.label)?;
        src_arcs.push((a.source, l, a.target));
    }
    let mut index = Index {
        out: HashMap::new(),
        inc: HashMap::new(),
        arcs: HashSet::new(),
    };
    for a in dst.arcs() {
        let l = labels[&a.label];
        index.out.entry((l, a.source)).or_default().push(a.target);
        index.inc.entry((l, a.target)).or_default().push(a.source);
        index.arcs.insert((a.source, l, a.target));
    }

    let mut degree: HashMap<NodeId, usize> = HashMap::new();
    for &(s, _, t) in &src_arcs {
        *degree.entry(s).or_default() += 1;
        *degree.entry(t).or_default() += 1;
    }
    let mut order: Vec<NodeId> = pinned.keys().copied().collect();
    let mut placed: HashSet<NodeId> = order.iter().copied().collect();
    while placed.len() < src.nodes().len() {
        let next = src
            .nodes()
            .iter()
            .filter(|n| !placed.contains(n))
            .max_by_key(|&&n| {
                let links = src_arcs
                    .iter()
                    .filter(|&&(s, _, t)| (s == n && placed.contains(&t)) || (t == n && placed.contains(&s)))
                    .count();
                (links, degree.get(&n).copied().unwrap_or(0), std::cmp::Reverse(n))
            })
            .copied()
            .expect("unplaced node");
        placed.insert(next);
        order.push(next);
    }
    let position: HashMap<NodeId, usize> = order.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut checks = vec![Vec::new(); order.len()];
    for &(s, l, t) in &src_arcs {
        checks[position[&s].max(position[&t])].push((s, l, t));
    }
    let dst_nodes: Vec<NodeId> = dst.nodes().iter().copied().collect();
    let search = Search {
        order,
        checks,
        index,
        dst_nodes: &dst_nodes,
    };
    let mut map: HashMap<NodeId, NodeId> = pinned.iter().map(|(&a, &b)| (a, b)).collect();
    if search.run(0, &mut map, pinned.len()) {
        Some(Morphism {
            map: map.into_iter().collect(),
        })
    } else {
        None
    }
}

/// An arc `u ~T v` of a slice together with a morphism from `T`'s draft
/// sending `T`'s input to `u` and output to `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroWitness {
    pub arc: Arc,
    pub morphism: Morphism,
}

pub fn is_zero_slice(s: &Slice) -> Option<ZeroWitness> {
    for a in s.arcs() {
        let Some(t) = a.label.as_compl_slice() else {
            continue;
        };
        let mut pinned = BTreeMap::new();
        pinned.insert(t.input(), a.source);
        if t.output() != t.input() {
            pinned.insert(t.output(), a.target);
        } else if a.source != a.target {
            continue;
        }
        if let Some(m) = find_morphism(t.draft(), s.draft(), &pinned) {
            return Some(ZeroWitness {
                arc: a.clone(),
                morphism: m,
            });
        }
    }
    None
}

/// Every member is zero; the empty graph is zero.
pub fn is_zero_graph(g: &Graph) -> bool {
    g.iter().all(|s| is_zero_slice(s).is_some())
}

/// Index of a hypothesis slice whose draft maps into the slice's draft,
/// with the morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErasureWitness {
    pub hypothesis: usize,
    pub morphism: Morphism,
}

pub fn is_erasable(s: &Slice, hyps: &[Slice]) -> Option<ErasureWitness> {
    hyps.iter().enumerate().find_map(|(i, h)| {
        find_morphism(h.draft(), s.draft(), &BTreeMap::new()).map(|m| ErasureWitness {
            hypothesis: i,
            morphism: m,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Draft;

    fn n(i: u32) -> NodeId {
        NodeId(i)
    }

    fn arc(s: u32, l: &str, t: u32) -> Arc {
        Arc::new(n(s), Label::name(l), n(t))
    }

    fn pins(pairs: &[(u32, u32)]) -> BTreeMap<NodeId, NodeId> {
        pairs.iter().map(|&(a, b)| (n(a), n(b))).collect()
    }

    #[test]
    fn identity_on_itself() {
        let d = Draft::new([n(0), n(1), n(2)], [arc(0, "p", 1), arc(1, "q", 2), arc(2, "p", 0)]).unwrap();
        let m = find_morphism(&d, &d, &BTreeMap::new()).unwrap();
        assert!(is_morphism(&d, &d, &m.map));
        // A 3-cycle maps to itself only by rotation; with labels p,q,p the
        // identity is the only one.
        assert_eq!(m.map, pins(&[(0, 0), (1, 1), (2, 2)]));
    }

    #[test]
    fn pinning_is_respected() {
        let src = Draft::new([n(0), n(1)], [arc(0, "p", 1)]).unwrap();
        let dst = Draft::new([n(5), n(6), n(7)], [arc(5, "p", 6), arc(7, "p", 6)]).unwrap();
        let m = find_morphism(&src, &dst, &pins(&[(0, 7)])).unwrap();
        assert_eq!(m.map, pins(&[(0, 7), (1, 6)]));
        assert!(find_morphism(&src, &dst, &pins(&[(1, 5)])).is_none());
    }

    #[test]
    fn missing_label_fails_fast() {
        let src = Draft::new([n(0), n(1)], [arc(0, "r", 1)]).unwrap();
        let dst = Draft::new([n(0), n(1)], [arc(0, "p", 1)]).unwrap();
        assert!(find_morphism(&src, &dst, &BTreeMap::new()).is_none());
    }

    #[test]
    fn arcless_source_maps_anywhere() {
        let src = Draft::new([n(0), n(1)], []).unwrap();
        let dst = Draft::new([n(3), n(4)], []).unwrap();
        assert!(find_morphism(&src, &dst, &BTreeMap::new()).is_some());
        let empty = Draft::new([], []).unwrap();
        assert!(find_morphism(&src, &empty, &BTreeMap::new()).is_none());
    }

    #[test]
    fn loops_must_map_to_loops() {
        let src = Draft::new([n(0)], [arc(0, "p", 0)]).unwrap();
        let dst = Draft::new([n(0), n(1)], [arc(0, "p", 1), arc(1, "p", 0)]).unwrap();
        assert!(find_morphism(&src, &dst, &BTreeMap::new()).is_none());
        let dst = Draft::new([n(0), n(1)], [arc(0, "p", 1), arc(1, "p", 1)]).unwrap();
        assert_eq!(find_morphism(&src, &dst, &BTreeMap::new()).unwrap().map, pins(&[(0, 1)]));
    }

    #[test]
    fn slices_without_complemented_arcs_are_not_zero() {
        let s = Slice::from_arcs([arc(0, "p", 1)], n(0), n(1));
        assert!(is_zero_slice(&s).is_none());
        assert!(is_zero_graph(&Graph::new()));
        assert!(!is_zero_graph(&Graph::from_slices([s])));
    }

    #[test]
    fn parallel_complement_is_zero() {
        let t = Slice::from_arcs([arc(0, "p", 2), arc(2, "q", 1)], n(0), n(1));
        let s = Slice::from_arcs(
            [arc(5, "p", 6), arc(6, "q", 7), Arc::new(n(5), Label::compl_slice(&t), n(7))],
            n(5),
            n(7),
        );
        let w = is_zero_slice(&s).unwrap();
        assert!(is_morphism(t.draft(), s.draft(), &w.morphism.map));
    }

    #[test]
    fn erasure_against_arcless_hypothesis() {
        let h = Slice::from_arcs([], n(0), n(1));
        let s = Slice::from_arcs([arc(3, "p", 4)], n(3), n(4));
        assert!(is_erasable(&s, std::slice::from_ref(&h)).is_some());
        assert!(is_erasable(&s, &[]).is_none());
    }
}
