//! The individual conversion rules.

use super::{ConversionError, RuleId};
use crate::graph::{
    glue_graph, glue_slice, graph_of_slice, is_small, single_arc_slice, slice_of_graph, Arc, Label,
    NodeId, Slice,
};

const X: NodeId = NodeId(0);
const Y: NodeId = NodeId(1);
const Z: NodeId = NodeId(2);

fn no_redex(rule: RuleId, reason: &str) -> ConversionError {
    ConversionError::NoRedex {
        rule,
        reason: reason.to_string(),
    }
}

fn one(arcs: Vec<Arc>, output: NodeId) -> Slice {
    Slice::from_arcs(arcs, X, output)
}

/// Applies a label rule to the root of `l`.
pub fn rewrite_label(rule: RuleId, l: &Label) -> Result<Label, ConversionError> {
    let mismatch = || no_redex(rule, "the label's head does not match the rule");
    let arc = |s, l: &Label, t| Arc::new(s, l.clone(), t);
    Ok(match (rule, l) {
        (RuleId::Bot, Label::Bottom) => Label::graph([]),
        (RuleId::Top, Label::Top) => Label::graph([&one(vec![], Y)]),
        (RuleId::Id, Label::Id) => Label::graph([&one(vec![], X)]),
        (RuleId::Di, Label::Di) => {
            let point = one(vec![], X);
            Label::graph([&one(vec![Arc::new(X, Label::compl_slice(&point), Y)], Y)])
        }
        (RuleId::DoubleCompl, Label::Compl(inner)) => match &**inner {
            Label::Compl(l) => (**l).clone(),
            _ => return Err(mismatch()),
        },
        (RuleId::Conv, Label::Conv(a)) => Label::graph([&one(vec![arc(Y, a, X)], Y)]),
        (RuleId::Meet, Label::Meet(a, b)) => Label::graph([&one(vec![arc(X, a, Y), arc(X, b, Y)], Y)]),
        (RuleId::Join, Label::Join(a, b)) => {
            Label::graph([&one(vec![arc(X, a, Y)], Y), &one(vec![arc(X, b, Y)], Y)])
        }
        (RuleId::RelProd, Label::RelProd(a, b)) => {
            Label::graph([&one(vec![arc(X, a, Z), arc(Z, b, Y)], Y)])
        }
        (RuleId::RelSum, Label::RelSum(a, b)) => {
            let inner = one(
                vec![
                    Arc::new(X, (**a).clone().compl(), Z),
                    Arc::new(Z, (**b).clone().compl(), Y),
                ],
                Y,
            );
            Label::graph([&one(vec![Arc::new(X, Label::compl_slice(&inner), Y)], Y)])
        }
        (RuleId::ComplGraph, Label::Compl(inner)) => match &**inner {
            Label::Graph(g) => Label::slice(&slice_of_graph(g.slices())),
            _ => return Err(mismatch()),
        },
        (RuleId::ComplSmallSlice, Label::Compl(inner)) => {
            let s = match &**inner {
                Label::Graph(g) if g.slices().len() == 1 => &g.slices()[0],
                Label::Slice(s) => s.slice(),
                _ => return Err(mismatch()),
            };
            if !is_small(s) {
                return Err(no_redex(rule, "the complemented slice is not small"));
            }
            if s.input() == s.output() {
                return Err(no_redex(
                    rule,
                    "the complemented slice has a single node; the rule only holds for distinct input and output",
                ));
            }
            Label::graph(graph_of_slice(s)?.slices())
        }
        (RuleId::ComplName, Label::Compl(inner)) => match &**inner {
            Label::Name(_) => Label::compl_slice(&single_arc_slice((**inner).clone())),
            _ => return Err(mismatch()),
        },
        (r, _) if r.acts_on_arc() => return Err(no_redex(rule, "the rule applies to arcs, not labels")),
        _ => return Err(mismatch()),
    })
}

/// Applies an arc rule to arc `j` of `s`, returning the slices that replace
/// `s`.
pub fn rewrite_arc(rule: RuleId, s: &Slice, j: usize) -> Result<Vec<Slice>, ConversionError> {
    let a = s
        .arc(j)
        .ok_or_else(|| ConversionError::BadPosition(format!("slice has no arc {j}")))?;
    let rest = s.without_arc(a);
    match (rule, &a.label) {
        (RuleId::GraphArc, Label::Graph(h)) => {
            Ok(glue_graph(&rest, a.source, a.target, h.slices()).slices().to_vec())
        }
        (RuleId::GraphArc, Label::Slice(t)) => Ok(vec![glue_slice(&rest, a.source, a.target, t)]),
        (RuleId::DerivedComplGraphArc, Label::Compl(inner)) => match &**inner {
            Label::Graph(h) => {
                let arcs = h
                    .slices()
                    .iter()
                    .map(|t| Arc::new(a.source, Label::compl_slice(t), a.target));
                Ok(vec![rest.with_arcs(arcs)])
            }
            _ => Err(no_redex(rule, "the arc label is not a complemented graph")),
        },
        (RuleId::GraphArc, _) => Err(no_redex(rule, "the arc label is not a graph or slice")),
        (RuleId::DerivedComplGraphArc, _) => {
            Err(no_redex(rule, "the arc label is not a complemented graph"))
        }
        _ => Err(no_redex(rule, "the rule applies to labels, not arcs")),
    }
}
