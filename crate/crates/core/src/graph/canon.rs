//! Canonical forms of slices.
//!
//! Colour refinement over (input flag, output flag, incident arc labels),
//! followed by individualization of the first non-singleton colour class.
//! Among the discrete colourings reached, the one with the smallest
//! certificate wins. Nodes that can be swapped by an automorphism fixing
//! everything else are explored once per class.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Label, NodeId, Slice};

struct Shape {
    n: usize,
    input: usize,
    output: usize,
    arcs: Vec<(usize, usize, usize)>,
    arc_set: BTreeSet<(usize, usize, usize)>,
    /// Per node: (direction, label, neighbour).
    incident: Vec<Vec<(u8, usize, usize)>>,
}

impl Shape {
    fn new(s: &Slice) -> (Shape, Vec<NodeId>) {
        let nodes: Vec<NodeId> = s.nodes().iter().copied().collect();
        let index: HashMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let labels: BTreeSet<&Label> = s.arcs().iter().map(|a| &a.label).collect();
        let label_index: HashMap<&Label, usize> =
            labels.into_iter().enumerate().map(|(i, l)| (l, i)).collect();
        let n = nodes.len();
        let mut incident = vec![Vec::new(); n];
        let mut arcs = Vec::with_capacity(s.arcs().len());
        for a in s.arcs() {
            let (u, l, v) = (index[&a.source], label_index[&a.label], index[&a.target]);
            arcs.push((u, l, v));
            incident[u].push((0, l, v));
            incident[v].push((1, l, u));
        }
        let arc_set = arcs.iter().copied().collect();
        let shape = Shape {
            n,
            input: index[&s.input()],
            output: index[&s.output()],
            arcs,
            arc_set,
            incident,
        };
        (shape, nodes)
    }

    fn initial_colors(&self) -> Vec<usize> {
        let keys: Vec<_> = (0..self.n)
            .map(|i| {
                let mut inc: Vec<(u8, usize, bool)> = self.incident[i]
                    .iter()
                    .map(|&(d, l, o)| (d, l, o == i))
                    .collect();
                inc.sort_unstable();
                (i != self.input, i != self.output, inc)
            })
            .collect();
        rank(&keys)
    }

    fn refine(&self, colors: &mut Vec<usize>) {
        let mut classes = count_classes(colors);
        loop {
            let keys: Vec<_> = (0..self.n)
                .map(|i| {
                    let mut inc: Vec<(u8, usize, usize)> = self.incident[i]
                        .iter()
                        .map(|&(d, l, o)| (d, l, colors[o]))
                        .collect();
                    inc.sort_unstable();
                    (colors[i], inc)
                })
                .collect();
            let next = rank(&keys);
            let next_classes = count_classes(&next);
            *colors = next;
            if next_classes == classes {
                return;
            }
            classes = next_classes;
        }
    }

    fn swap_is_automorphism(&self, a: usize, b: usize) -> bool {
        let sw = |x: usize| {
            if x == a {
                b
            } else if x == b {
                a
            } else {
                x
            }
        };
        if sw(self.input) != self.input || sw(self.output) != self.output {
            return false;
        }
        self.incident[a].len() == self.incident[b].len()
            && self
                .arcs
                .iter()
                .all(|&(u, l, v)| self.arc_set.contains(&(sw(u), l, sw(v))))
    }

    fn certificate(&self, colors: &[usize]) -> Certificate {
        let mut arcs: Vec<(usize, usize, usize)> = self
            .arcs
            .iter()
            .map(|&(u, l, v)| (colors[u], l, colors[v]))
            .collect();
        arcs.sort_unstable();
        (colors[self.input], colors[self.output], arcs)
    }
}

type Certificate = (usize, usize, Vec<(usize, usize, usize)>);

fn rank<K: Ord>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<&K> = keys.iter().collect();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(&k).expect("key present"))
        .collect()
}

fn count_classes(colors: &[usize]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

struct Best {
    cert: Certificate,
    colors: Vec<usize>,
}

fn search(shape: &Shape, mut colors: Vec<usize>, best: &mut Option<Best>) {
    shape.refine(&mut colors);
    let mut sizes = vec![0usize; shape.n];
    for &c in &colors {
        sizes[c] += 1;
    }
    let Some(cell) = (0..shape.n).find(|&c| sizes[c] > 1) else {
        let cert = shape.certificate(&colors);
        if best.as_ref().is_none_or(|b| cert < b.cert) {
            *best = Some(Best { cert, colors });
        }
        return;
    };
    let members: Vec<usize> = (0..shape.n).filter(|&i| colors[i] == cell).collect();
    let mut explored: Vec<usize> = Vec::new();
    for &m in &members {
        if explored.iter().any(|&r| shape.swap_is_automorphism(r, m)) {
            continue;
        }
        explored.push(m);
        let split: Vec<(usize, bool)> = (0..shape.n)
            .map(|i| (colors[i], colors[i] == cell && i != m))
            .collect();
        search(shape, rank(&split), best);
    }
}

/// Renaming of the slice's nodes onto `0..n` that produces its canonical
/// form.
pub fn canonical_labeling(s: &Slice) -> BTreeMap<NodeId, NodeId> {
    let (shape, nodes) = Shape::new(s);
    let mut best = None;
    search(&shape, shape.initial_colors(), &mut best);
    let best = best.expect("search reaches at least one leaf");
    nodes
        .iter()
        .enumerate()
        .map(|(i, &node)| (node, NodeId(best.colors[i] as u32)))
        .collect()
}

/// Canonical representative of the slice's isomorphism class: isomorphic
/// slices yield identical values.
pub fn canonicalize(s: &Slice) -> Slice {
    let map = canonical_labeling(s);
    s.rename(|n| map[&n])
}
