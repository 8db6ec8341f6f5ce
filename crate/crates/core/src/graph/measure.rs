//! Basicness and the rank / embedded-slice measures.
//!
//! A basic label is a relation name or `~T` for a basic slice `T`. The rank
//! counts complemented slices, nested ones included; the embedded slices of
//! a basic object are the slices `T` occurring as `~T` at any depth.

use std::collections::BTreeSet;

use super::{Arc, Draft, Graph, GraphError, Label, Slice, SliceLit};

pub fn is_basic_label(l: &Label) -> bool {
    match l {
        Label::Name(_) => true,
        _ => l.as_compl_slice().is_some_and(|t| is_basic_slice(t)),
    }
}

pub fn is_basic_arc(a: &Arc) -> bool {
    is_basic_label(&a.label)
}

pub fn is_basic_slice(s: &Slice) -> bool {
    s.arcs().iter().all(is_basic_arc)
}

pub fn is_basic_graph(g: &Graph) -> bool {
    g.iter().all(is_basic_slice)
}

pub fn rank_label(l: &Label) -> Result<usize, GraphError> {
    match l {
        Label::Name(_) => Ok(0),
        _ => match l.as_compl_slice() {
            Some(t) => Ok(rank_slice(t)? + 1),
            None => Err(GraphError::NotBasic),
        },
    }
}

pub fn rank_draft(d: &Draft) -> Result<usize, GraphError> {
    d.arcs().iter().map(|a| rank_label(&a.label)).sum()
}

pub fn rank_slice(s: &Slice) -> Result<usize, GraphError> {
    rank_draft(s.draft())
}

pub fn embedded_slices_label(l: &Label) -> Result<BTreeSet<SliceLit>, GraphError> {
    let mut out = BTreeSet::new();
    collect_label(l, &mut out)?;
    Ok(out)
}

pub fn embedded_slices_draft(d: &Draft) -> Result<BTreeSet<SliceLit>, GraphError> {
    let mut out = BTreeSet::new();
    for a in d.arcs() {
        collect_label(&a.label, &mut out)?;
    }
    Ok(out)
}

/// Embedded slices of a basic slice, in canonical form.
pub fn embedded_slices(s: &Slice) -> Result<BTreeSet<SliceLit>, GraphError> {
    embedded_slices_draft(s.draft())
}

fn collect_label(l: &Label, out: &mut BTreeSet<SliceLit>) -> Result<(), GraphError> {
    match l {
        Label::Name(_) => Ok(()),
        _ => {
            let t = l.as_compl_slice().ok_or(GraphError::NotBasic)?;
            for a in t.arcs() {
                collect_label(&a.label, out)?;
            }
            out.insert(t.clone());
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{arc, n, name};

    fn q_slice() -> Slice {
        Slice::from_arcs([arc(0, name("q"), 1)], n(0), n(1))
    }

    #[test]
    fn names_are_basic_with_rank_zero() {
        assert!(is_basic_label(&name("r")));
        assert_eq!(rank_label(&name("r")), Ok(0));
        assert!(embedded_slices_label(&name("r")).unwrap().is_empty());
    }

    #[test]
    fn complement_of_operation_is_not_basic() {
        let l = name("p").rel_prod(name("q")).compl();
        assert!(!is_basic_label(&l));
        assert_eq!(rank_label(&l), Err(GraphError::NotBasic));
        assert!(!is_basic_label(&Label::Top));
        assert!(!is_basic_label(&Label::slice(&q_slice())));
    }

    #[test]
    fn rank_of_single_complemented_slice() {
        let t = Slice::from_arcs(
            [arc(0, name("a"), 2), arc(2, name("b"), 3), arc(3, name("c"), 1)],
            n(0),
            n(1),
        );
        let d = Draft::new([n(0), n(1)], [arc(0, Label::compl_slice(&t), 1)]).unwrap();
        assert_eq!(rank_draft(&d), Ok(1));
        let nested = Slice::from_arcs(
            [arc(0, Label::compl_slice(&q_slice()), 1), arc(0, name("p"), 1)],
            n(0),
            n(1),
        );
        let d = Draft::new([n(0), n(1)], [arc(0, Label::compl_slice(&nested), 1)]).unwrap();
        assert_eq!(rank_draft(&d), Ok(2));
    }

    #[test]
    fn embedded_slices_collect_nested_ones() {
        let inner = q_slice();
        let outer = Slice::from_arcs(
            [arc(0, Label::compl_slice(&inner), 1), arc(0, name("p"), 1)],
            n(0),
            n(1),
        );
        let s = Slice::from_arcs([arc(5, Label::compl_slice(&outer), 6)], n(5), n(6));
        let esl = embedded_slices(&s).unwrap();
        assert_eq!(esl.len(), 2);
        assert!(esl.contains(&SliceLit::new(&inner)));
        assert!(esl.contains(&SliceLit::new(&outer)));
        assert!(is_basic_slice(&s));
    }
}
