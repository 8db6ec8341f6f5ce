//! The fixed conversion strategy.
//!
//! The redex is found in the first slice, at its first non-basic arc. An
//! operation or constant is expanded at once; graph and slice labels are
//! glued into the host. Under a complement the strategy first cancels double
//! complements and wraps names, then works inside the complemented label
//! until it is a basic slice or graph, and finally splits a complemented
//! graph into complemented slices.

use super::apply::{apply_at, lift};
use super::{ConversionError, ConversionStep, PathStep, RuleId};
use crate::graph::{difference_slice, is_basic_label, is_basic_slice, is_small, Graph, Label, Slice};
use crate::term::Inclusion;

/// Ceiling on the number of steps of one conversion.
pub const DEFAULT_STEP_LIMIT: usize = 100_000;

fn operational(l: &Label) -> Option<RuleId> {
    Some(match l {
        Label::Bottom => RuleId::Bot,
        Label::Top => RuleId::Top,
        Label::Id => RuleId::Id,
        Label::Di => RuleId::Di,
        Label::Conv(_) => RuleId::Conv,
        Label::Meet(..) => RuleId::Meet,
        Label::Join(..) => RuleId::Join,
        Label::RelProd(..) => RuleId::RelProd,
        Label::RelSum(..) => RuleId::RelSum,
        _ => return None,
    })
}

fn prefixed(step: PathStep, (mut path, rule): (Vec<PathStep>, RuleId)) -> (Vec<PathStep>, RuleId) {
    path.insert(0, step);
    (path, rule)
}

fn in_slice(s: &Slice) -> Option<(Vec<PathStep>, RuleId)> {
    s.arcs()
        .iter()
        .enumerate()
        .find(|(_, a)| !is_basic_label(&a.label))
        .map(|(j, a)| prefixed(PathStep::Arc(j), in_arc_label(&a.label)))
}

/// Redex of a non-basic arc label, relative to the arc.
fn in_arc_label(l: &Label) -> (Vec<PathStep>, RuleId) {
    if let Some(rule) = operational(l) {
        return (vec![], rule);
    }
    match l {
        Label::Slice(_) | Label::Graph(_) => (vec![], RuleId::GraphArc),
        Label::Compl(inner) => in_complement(inner),
        Label::Name(_) => unreachable!("names are basic"),
        _ => unreachable!("every head is covered"),
    }
}

/// Redex of `~inner`, relative to the arc carrying it.
fn in_complement(inner: &Label) -> (Vec<PathStep>, RuleId) {
    if let Some(rule) = operational(inner) {
        return (vec![PathStep::Operand(0)], rule);
    }
    match inner {
        Label::Compl(_) => (vec![], RuleId::DoubleCompl),
        Label::Name(_) => (vec![], RuleId::ComplName),
        Label::Slice(t) => {
            let found = in_slice(t).expect("a non-basic complemented slice has a non-basic arc");
            prefixed(PathStep::Operand(0), found)
        }
        Label::Graph(h) => {
            if let Some((i, found)) = h.slices().iter().enumerate().find_map(|(i, t)| in_slice(t).map(|f| (i, f))) {
                let (path, rule) = prefixed(PathStep::Slice(i), found);
                return prefixed(PathStep::Operand(0), (path, rule));
            }
            match h.slices() {
                [t] if is_small(t) && t.input() != t.output() => (vec![], RuleId::ComplSmallSlice),
                _ => (vec![], RuleId::DerivedComplGraphArc),
            }
        }
        _ => unreachable!("every head is covered"),
    }
}

/// Position and rule of the next conversion step, or `None` when the graph
/// is basic.
pub fn next_redex(g: &Graph) -> Option<(Vec<PathStep>, RuleId)> {
    g.iter()
        .enumerate()
        .find_map(|(i, s)| (!is_basic_slice(s)).then(|| prefixed(PathStep::Slice(i), in_slice(s).expect("non-basic"))))
}

/// Converts a graph into an equivalent basic graph, recording each step.
pub fn normalize(g: Graph, limit: usize) -> Result<(Graph, Vec<ConversionStep>), ConversionError> {
    let mut g = g;
    let mut steps = Vec::new();
    while let Some((pos, rule)) = next_redex(&g) {
        if steps.len() >= limit {
            return Err(ConversionError::StepLimit(limit));
        }
        let (next, step) = apply_at(&g, &pos, rule)?;
        g = next;
        steps.push(step);
    }
    Ok((g, steps))
}

/// The basic graph equivalent to a label.
pub fn to_basic(l: &Label) -> Result<(Graph, Vec<ConversionStep>), ConversionError> {
    normalize(lift(l), DEFAULT_STEP_LIMIT)
}

/// The basic graph equivalent to the difference slice of an inclusion; it
/// is empty in a model exactly when the inclusion holds there.
pub fn to_basic_inclusion(inc: &Inclusion) -> Result<(Graph, Vec<ConversionStep>), ConversionError> {
    let start = Graph::from_slices([difference_slice(Label::from(&inc.lhs), Label::from(&inc.rhs))]);
    normalize(start, DEFAULT_STEP_LIMIT)
}
