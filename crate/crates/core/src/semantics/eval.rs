//! Evaluation of terms, labels, slices and graphs in a model.

use std::collections::{BTreeMap, HashMap};

use super::{Model, Relation};
use crate::graph::{Draft, Label, NodeId, Slice, SliceLit};
use crate::term::{Inclusion, Term};

pub fn eval_term(m: &Model, t: &Term) -> Relation {
    let n = m.size();
    match t {
        Term::Name(x) => m.relation(x),
        Term::Bottom => Relation::empty(n),
        Term::Top => Relation::full(n),
        Term::Id => Relation::identity(n),
        Term::Di => Relation::diversity(n),
        Term::Compl(a) => eval_term(m, a).complement(),
        Term::Conv(a) => eval_term(m, a).converse(),
        Term::Meet(a, b) => eval_term(m, a).meet(&eval_term(m, b)),
        Term::Join(a, b) => eval_term(m, a).join(&eval_term(m, b)),
        Term::RelProd(a, b) => eval_term(m, a).compose(&eval_term(m, b)),
        Term::RelSum(a, b) => eval_term(m, a).rel_sum(&eval_term(m, b)),
    }
}

/// Label evaluator that caches the extensions of embedded slices.
pub struct Evaluator<'m> {
    model: &'m Model,
    // Keyed by address; the stored handle keeps the address from being reused.
    cache: HashMap<usize, (SliceLit, Relation)>,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m Model) -> Self {
        Evaluator {
            model,
            cache: HashMap::new(),
        }
    }

    pub fn label(&mut self, l: &Label) -> Relation {
        let n = self.model.size();
        match l {
            Label::Name(x) => self.model.relation(x),
            Label::Bottom => Relation::empty(n),
            Label::Top => Relation::full(n),
            Label::Id => Relation::identity(n),
            Label::Di => Relation::diversity(n),
            Label::Compl(a) => self.label(a).complement(),
            Label::Conv(a) => self.label(a).converse(),
            Label::Meet(a, b) => self.label(a).meet(&self.label(b)),
            Label::Join(a, b) => self.label(a).join(&self.label(b)),
            Label::RelProd(a, b) => self.label(a).compose(&self.label(b)),
            Label::RelSum(a, b) => self.label(a).rel_sum(&self.label(b)),
            Label::Slice(s) => {
                if let Some((_, r)) = self.cache.get(&s.ptr()) {
                    return r.clone();
                }
                let r = self.slice(s);
                self.cache.insert(s.ptr(), (s.clone(), r.clone()));
                r
            }
            Label::Graph(g) => self.slices(g.slices()),
        }
    }

    pub fn slices<'a>(&mut self, g: impl IntoIterator<Item = &'a Slice>) -> Relation {
        let mut out = Relation::empty(self.model.size());
        for s in g {
            out = out.join(&self.slice(s));
        }
        out
    }

    /// Pairs `(γ(input), γ(output))` over the assignments `γ` satisfying
    /// every arc of the slice.
    pub fn slice(&mut self, s: &Slice) -> Relation {
        let size = self.model.size();
        let nodes: Vec<NodeId> = s.nodes().iter().copied().collect();
        let index: HashMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let arcs: Vec<(usize, Relation, usize)> = s
            .arcs()
            .iter()
            .map(|a| (index[&a.source], self.label(&a.label), index[&a.target]))
            .collect();
        let order = search_order(nodes.len(), index[&s.input()], index[&s.output()], &arcs);
        let mut position = vec![usize::MAX; nodes.len()];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        // Arcs checked once the later of their endpoints is assigned.
        let mut checks: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for (i, (u, _, v)) in arcs.iter().enumerate() {
            checks[position[*u].max(position[*v])].push(i);
        }
        let mut result = Relation::empty(size);
        let (input, output) = (index[&s.input()], index[&s.output()]);
        let mut value = vec![0usize; nodes.len()];
        let solver = Solver {
            size,
            order: &order,
            arcs: &arcs,
            checks: &checks,
        };
        for a in 0..size {
            for b in 0..size {
                if input == output && a != b {
                    continue;
                }
                value[input] = a;
                value[output] = b;
                let fixed = if input == output { 1 } else { 2 };
                if (0..fixed).all(|k| solver.consistent(k, &value)) && solver.extend(fixed, &mut value) {
                    result.insert(a, b);
                }
            }
        }
        result
    }
}

struct Solver<'a> {
    size: usize,
    order: &'a [usize],
    arcs: &'a [(usize, Relation, usize)],
    checks: &'a [Vec<usize>],
}

impl Solver<'_> {
    fn consistent(&self, k: usize, value: &[usize]) -> bool {
        self.checks[k].iter().all(|&i| {
            let (u, r, v) = &self.arcs[i];
            r.contains(value[*u], value[*v])
        })
    }

    fn extend(&self, k: usize, value: &mut [usize]) -> bool {
        if k == self.order.len() {
            return true;
        }
        let node = self.order[k];
        for c in 0..self.size {
            value[node] = c;
            if self.consistent(k, value) && self.extend(k + 1, value) {
                return true;
            }
        }
        false
    }
}

/// Input, output, then repeatedly the node with most arcs into the placed
/// ones.
fn search_order(n: usize, input: usize, output: usize, arcs: &[(usize, Relation, usize)]) -> Vec<usize> {
    let mut order = vec![input];
    if output != input {
        order.push(output);
    }
    let mut placed = vec![false; n];
    for &v in &order {
        placed[v] = true;
    }
    while order.len() < n {
        let score = |v: usize| {
            arcs.iter()
                .filter(|(a, _, b)| (*a == v && placed[*b]) || (*b == v && placed[*a]))
                .count()
        };
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (score(v), std::cmp::Reverse(v)))
            .expect("unplaced node");
        placed[next] = true;
        order.push(next);
    }
    order
}

pub fn eval_label(m: &Model, l: &Label) -> Relation {
    Evaluator::new(m).label(l)
}

pub fn slice_extension(m: &Model, s: &Slice) -> Relation {
    Evaluator::new(m).slice(s)
}

pub fn graph_extension<'a>(m: &Model, g: impl IntoIterator<Item = &'a Slice>) -> Relation {
    Evaluator::new(m).slices(g)
}

pub fn holds(m: &Model, inc: &Inclusion) -> bool {
    eval_term(m, &inc.lhs).is_subset(&eval_term(m, &inc.rhs))
}

pub fn holds_labels(m: &Model, l: &Label, k: &Label) -> bool {
    let mut ev = Evaluator::new(m);
    ev.label(l).is_subset(&ev.label(k))
}

/// Smallest pair in the left side but not the right side, if any.
pub fn falsifying_pair(m: &Model, inc: &Inclusion) -> Option<(usize, usize)> {
    eval_term(m, &inc.lhs).first_missing_from(&eval_term(m, &inc.rhs))
}

/// Whether `assignment` (total on the draft's nodes) satisfies every arc.
pub fn satisfies(m: &Model, d: &Draft, assignment: &BTreeMap<NodeId, usize>) -> bool {
    let mut ev = Evaluator::new(m);
    d.arcs()
        .iter()
        .all(|a| ev.label(&a.label).contains(assignment[&a.source], assignment[&a.target]))
}

/// The model read off a draft: carrier element `i` is the `i`-th node and
/// each name holds exactly along its arcs. Returns the model and the node
/// behind each element.
pub fn natural_model(d: &Draft) -> (Model, Vec<NodeId>) {
    let nodes: Vec<NodeId> = d.nodes().iter().copied().collect();
    let index: HashMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut pairs: BTreeMap<&str, Vec<(usize, usize)>> = BTreeMap::new();
    for a in d.arcs() {
        if let Label::Name(x) = &a.label {
            pairs
                .entry(x)
                .or_default()
                .push((index[&a.source], index[&a.target]));
        }
    }
    let mut m = Model::new(nodes.len());
    for (name, ps) in pairs {
        m = m.with(name, ps);
    }
    (m, nodes)
}
