//! Rule application at a position.

use super::rules::{rewrite_arc, rewrite_label};
use super::{ConversionError, ConversionStep, Fragment, PathStep, RuleId};
use crate::graph::{single_arc_slice, Graph, Label, Slice};

/// The graph a label denotes: embedded slices and graphs are unwrapped,
/// anything else becomes a single-arc slice.
pub fn lift(l: &Label) -> Graph {
    match l {
        Label::Slice(s) => Graph::from_slices([s.slice().clone()]),
        Label::Graph(h) => h.to_graph(),
        other => Graph::from_slices([single_arc_slice(other.clone())]),
    }
}

fn bad(pos: &[PathStep], why: &str) -> ConversionError {
    ConversionError::BadPosition(format!("{pos:?}: {why}"))
}

struct Applied {
    before: Fragment,
    after: Fragment,
}

/// Applies `rule` at `pos` in `g`. Positions start with `Slice(i)`.
pub fn apply_at(
    g: &Graph,
    pos: &[PathStep],
    rule: RuleId,
) -> Result<(Graph, ConversionStep), ConversionError> {
    let (i, rest) = match pos.split_first() {
        Some((PathStep::Slice(i), rest)) => (*i, rest),
        _ => return Err(bad(pos, "a graph position starts with a slice index")),
    };
    let s = g.slices().get(i).ok_or_else(|| bad(pos, "no such slice"))?;
    let mut applied = None;
    let out = in_slice(s, rest, rule, &mut applied)?;
    let Applied { before, after } = applied.expect("a rule was applied");
    let step = ConversionStep {
        rule,
        position: pos.to_vec(),
        before,
        after,
    };
    Ok((g.replace(i, out), step))
}

fn in_slice(
    s: &Slice,
    path: &[PathStep],
    rule: RuleId,
    applied: &mut Option<Applied>,
) -> Result<Vec<Slice>, ConversionError> {
    let (j, rest) = match path.split_first() {
        Some((PathStep::Arc(j), rest)) => (*j, rest),
        _ => return Err(bad(path, "a slice position starts with an arc index")),
    };
    if rest.is_empty() && rule.acts_on_arc() {
        let out = rewrite_arc(rule, s, j)?;
        *applied = Some(Applied {
            before: Fragment::Slice(s.clone()),
            after: Fragment::Slices(out.clone()),
        });
        return Ok(out);
    }
    let a = s.arc(j).ok_or_else(|| bad(path, "no such arc"))?;
    let label = in_label(&a.label, rest, rule, applied)?;
    let mut replaced = a.clone();
    replaced.label = label;
    Ok(vec![s.without_arc(a).with_arcs([replaced])])
}

fn in_label(
    l: &Label,
    path: &[PathStep],
    rule: RuleId,
    applied: &mut Option<Applied>,
) -> Result<Label, ConversionError> {
    let Some((step, rest)) = path.split_first() else {
        let out = rewrite_label(rule, l)?;
        *applied = Some(Applied {
            before: Fragment::Label(l.clone()),
            after: Fragment::Label(out.clone()),
        });
        return Ok(out);
    };
    let mut sub = |x: &Label| in_label(x, rest, rule, applied);
    Ok(match (step, l) {
        (PathStep::Operand(0), Label::Compl(a)) => sub(a)?.compl(),
        (PathStep::Operand(0), Label::Conv(a)) => sub(a)?.conv(),
        (PathStep::Operand(k @ (0 | 1)), Label::Meet(a, b))
        | (PathStep::Operand(k @ (0 | 1)), Label::Join(a, b))
        | (PathStep::Operand(k @ (0 | 1)), Label::RelProd(a, b))
        | (PathStep::Operand(k @ (0 | 1)), Label::RelSum(a, b)) => {
            let (a, b) = if *k == 0 {
                (sub(a)?, (**b).clone())
            } else {
                ((**a).clone(), sub(b)?)
            };
            match l {
                Label::Meet(..) => a.meet(b),
                Label::Join(..) => a.join(b),
                Label::RelProd(..) => a.rel_prod(b),
                _ => a.rel_sum(b),
            }
        }
        (PathStep::Arc(_), Label::Slice(t)) => {
            let out = in_slice(t.slice(), path, rule, applied)?;
            slices_label(out)
        }
        (PathStep::Slice(i), Label::Graph(h)) => {
            let t = h.slices().get(*i).ok_or_else(|| bad(path, "no such member"))?;
            let out = in_slice(t, rest, rule, applied)?;
            let mut members: Vec<Slice> = h.slices().to_vec();
            members.splice(*i..=*i, out);
            Label::graph(&members)
        }
        _ => return Err(bad(path, "the step does not fit the label")),
    })
}

/// An embedded slice that became several slices is held as a graph literal.
fn slices_label(out: Vec<Slice>) -> Label {
    match out.as_slice() {
        [one] => Label::slice(one),
        many => Label::graph(many),
    }
}
