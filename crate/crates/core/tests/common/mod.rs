//! Random generators and model enumeration shared by the integration tests.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use relgraph::graph::{Arc, Draft, Label, NodeId, Slice};
use relgraph::semantics::Model;
use relgraph::term::{Inclusion, Term};

pub const NAMES: [&str; 3] = ["p", "q", "r"];

/// A random term of depth at most `depth` over `names`.
pub fn term(rng: &mut StdRng, names: &[&str], depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => Term::Bottom,
            1 => Term::Top,
            2 => Term::Id,
            3 => Term::Di,
            _ => Term::name(names[rng.gen_range(0..names.len())]),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..6) {
        0 => term(rng, names, d).compl(),
        1 => term(rng, names, d).conv(),
        2 => term(rng, names, d).meet(term(rng, names, d)),
        3 => term(rng, names, d).join(term(rng, names, d)),
        4 => term(rng, names, d).rel_prod(term(rng, names, d)),
        _ => term(rng, names, d).rel_sum(term(rng, names, d)),
    }
}

pub fn inclusion(rng: &mut StdRng, names: &[&str], depth: usize) -> Inclusion {
    Inclusion::new(term(rng, names, depth), term(rng, names, depth))
}

/// Calls `f` on every model of the given size interpreting `names`.
pub fn for_each_model(size: usize, names: &[&str], mut f: impl FnMut(&Model)) {
    let cells = size * size;
    let bits = cells * names.len();
    for code in 0u64..(1u64 << bits) {
        let mut m = Model::new(size);
        for (k, name) in names.iter().enumerate() {
            let pairs = (0..cells)
                .filter(|c| code >> (k * cells + c) & 1 == 1)
                .map(|c| (c / size, c % size));
            m = m.with(name, pairs);
        }
        f(&m);
    }
}

pub fn random_model(rng: &mut StdRng, size: usize, names: &[&str]) -> Model {
    let mut m = Model::new(size);
    for name in names {
        let pairs: Vec<(usize, usize)> = (0..size)
            .flat_map(|a| (0..size).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        m = m.with(name, pairs);
    }
    m
}

fn label(rng: &mut StdRng, names: &[&str], nest: usize) -> Label {
    if nest > 0 && rng.gen_bool(0.25) {
        let n = rng.gen_range(1..=3);
        let t = slice(rng, n, names, nest - 1);
        Label::compl_slice(&t)
    } else {
        Label::name(names[rng.gen_range(0..names.len())])
    }
}

/// A random draft on nodes `0..nodes` with basic labels nested at most
/// `nest` deep.
pub fn draft(rng: &mut StdRng, nodes: u32, names: &[&str], nest: usize) -> Draft {
    let arcs: Vec<Arc> = (0..rng.gen_range(0..=nodes as usize + 2))
        .map(|_| {
            Arc::new(
                NodeId(rng.gen_range(0..nodes)),
                label(rng, names, nest),
                NodeId(rng.gen_range(0..nodes)),
            )
        })
        .collect();
    Draft::new((0..nodes).map(NodeId), arcs).expect("endpoints are nodes")
}

pub fn slice(rng: &mut StdRng, nodes: u32, names: &[&str], nest: usize) -> Slice {
    let d = draft(rng, nodes, names, nest);
    let input = NodeId(rng.gen_range(0..nodes));
    let output = NodeId(rng.gen_range(0..nodes));
    Slice::new(d, input, output).expect("input and output are nodes")
}

/// Every map from `src` nodes into `dst` nodes.
pub fn all_maps(src: &[NodeId], dst: &[NodeId], mut f: impl FnMut(&std::collections::BTreeMap<NodeId, NodeId>) -> bool) {
    let total = dst.len().pow(src.len() as u32);
    for code in 0..total {
        let mut c = code;
        let map = src
            .iter()
            .map(|&n| {
                let image = dst[c % dst.len()];
                c /= dst.len();
                (n, image)
            })
            .collect();
        if f(&map) {
            return;
        }
    }
}
