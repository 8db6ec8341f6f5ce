//! Slice constructions: difference slices, arc addition, gluing, identity
//! arc elimination, and the slice/graph conversions behind the complement
//! rules.

use std::collections::BTreeMap;

use super::{Arc, Draft, Graph, GraphError, Label, NodeId, Slice};

const X: NodeId = NodeId(0);
const Y: NodeId = NodeId(1);

/// Two-node slice `x l y`, `x ~k y`; its extension is empty exactly where
/// `l` is included in `k`.
pub fn difference_slice(l: Label, k: Label) -> Slice {
    Slice::from_arcs([Arc::new(X, l, Y), Arc::new(X, k.compl(), Y)], X, Y)
}

/// Two-node single-arc slice `x l y`.
pub fn single_arc_slice(l: Label) -> Slice {
    Slice::from_arcs([Arc::new(X, l, Y)], X, Y)
}

/// `s ⊕ a`: the arc and its endpoints are added; input and output stay.
pub fn add_arc(s: &Slice, a: Arc) -> Slice {
    s.with_arcs([a])
}

/// Glues `t` onto `s` by identifying `t`'s input with `u` and its output
/// with `v`.
///
/// The other nodes of `t` get ids above every node of `s`, `u` and `v`, in
/// their original order. When `t`'s input equals its output, `v` is merged
/// into `u` in the host.
pub fn glue_slice(s: &Slice, u: NodeId, v: NodeId, t: &Slice) -> Slice {
    let io_merged = t.input() == t.output();
    let host = if io_merged && u != v {
        s.rename(|n| if n == v { u } else { n })
    } else {
        s.clone()
    };
    let v = if io_merged { u } else { v };
    let base = s.max_node().max(u).max(v).0 + 1;
    let mut map = BTreeMap::new();
    let mut next = base;
    for &node in t.nodes() {
        let image = if node == t.input() {
            u
        } else if node == t.output() {
            v
        } else {
            next += 1;
            NodeId(next - 1)
        };
        map.insert(node, image);
    }
    let mut out = host;
    let mut draft = out.draft.clone();
    draft.insert_node(u);
    draft.insert_node(v);
    for &node in map.values() {
        draft.insert_node(node);
    }
    for a in t.arcs() {
        draft.insert_arc(Arc::new(map[&a.source], a.label.clone(), map[&a.target]));
    }
    out.draft = draft;
    out
}

/// `{ glue_slice(s, u, v, t) : t ∈ h }`.
pub fn glue_graph<'a>(
    s: &Slice,
    u: NodeId,
    v: NodeId,
    h: impl IntoIterator<Item = &'a Slice>,
) -> Graph {
    Graph::from_slices(h.into_iter().map(|t| glue_slice(s, u, v, t)))
}

/// Removes an identity arc `w I z` by renaming `w` to `z` throughout.
pub fn eliminate_id_arc(s: &Slice, a: &Arc) -> Result<Slice, GraphError> {
    if !s.has_arc(a) {
        return Err(GraphError::ArcNotFound);
    }
    if a.label != Label::Id {
        return Err(GraphError::NotIdentityArc);
    }
    let (from, to) = (a.source, a.target);
    Ok(s.without_arc(a)
        .rename(|n| if n == from { to } else { n }))
}

/// Two-node slice with one arc `x ~S y` per member `S`.
pub fn slice_of_graph<'a>(g: impl IntoIterator<Item = &'a Slice>) -> Slice {
    Slice::from_arcs(
        g.into_iter().map(|t| Arc::new(X, Label::compl_slice(t), Y)),
        X,
        Y,
    )
}

/// True iff the slice's nodes are exactly its input and output.
pub fn is_small(s: &Slice) -> bool {
    s.nodes().iter().all(|&n| n == s.input() || n == s.output())
}

/// One single-arc slice per arc of a small slice, with the input mapped to
/// `x`, the output to `y` and the label complemented.
pub fn graph_of_slice(s: &Slice) -> Result<Graph, GraphError> {
    if !is_small(s) {
        return Err(GraphError::NotSmall);
    }
    let place = |n: NodeId| if n == s.input() { X } else { Y };
    let slices = s.arcs().iter().map(|a| {
        let draft = Draft::new([X, Y], [Arc::new(place(a.source), a.label.clone().compl(), place(a.target))])
            .expect("endpoints are x and y");
        Slice::new(draft, X, Y).expect("x and y are nodes")
    });
    Ok(Graph::from_slices(slices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonicalize;
    use crate::graph::tests::{arc, n, name};

    // x=0, u=1, v=2, y=3
    fn path_rst() -> Slice {
        Slice::from_arcs(
            [arc(0, name("r"), 1), arc(1, name("s"), 2), arc(2, name("t"), 3)],
            n(0),
            n(3),
        )
    }

    fn t_p() -> Slice {
        Slice::from_arcs([arc(10, name("p"), 11)], n(10), n(11))
    }

    fn t_prime() -> Slice {
        Slice::from_arcs([arc(10, name("p"), 11), arc(11, name("q"), 10)], n(10), n(10))
    }

    #[test]
    fn difference_slice_shape() {
        let s = difference_slice(name("p"), name("q"));
        assert_eq!(s.nodes().len(), 2);
        assert!(s.has_arc(&arc(0, name("p"), 1)));
        assert!(s.has_arc(&arc(0, name("q").compl(), 1)));
        assert!(is_small(&s));
    }

    #[test]
    fn add_arc_is_set_union() {
        let s = path_rst();
        assert_eq!(add_arc(&s, arc(0, name("r"), 1)), s);
        let grown = add_arc(&s, arc(1, name("p"), 9));
        assert_eq!(grown.nodes().len(), 5);
        assert_eq!(grown.input(), s.input());
    }

    #[test]
    fn glue_parallel_arc() {
        let g = glue_slice(&path_rst(), n(1), n(2), &t_p());
        let expected = path_rst().with_arcs([arc(1, name("p"), 2)]);
        assert_eq!(g, expected);
    }

    #[test]
    fn glue_single_node_template_merges_host_nodes() {
        let g = glue_slice(&path_rst(), n(1), n(2), &t_prime());
        let expected = Slice::from_arcs(
            [
                arc(0, name("r"), 1),
                arc(1, name("s"), 1),
                arc(1, name("t"), 3),
                arc(1, name("p"), 4),
                arc(4, name("q"), 1),
            ],
            n(0),
            n(3),
        );
        assert_eq!(g, expected);
    }

    #[test]
    fn glue_at_input_and_output_merges_roles() {
        let g = glue_slice(&path_rst(), n(0), n(3), &t_prime());
        assert_eq!(g.input(), g.output());
        assert_eq!(g.nodes().len(), 4);
        let expected = Slice::from_arcs(
            [
                arc(0, name("r"), 1),
                arc(1, name("s"), 2),
                arc(2, name("t"), 0),
                arc(0, name("p"), 9),
                arc(9, name("q"), 0),
            ],
            n(0),
            n(0),
        );
        assert_eq!(canonicalize(&g), canonicalize(&expected));
    }

    #[test]
    fn glue_arcless_two_node_template_is_identity() {
        let top = Slice::from_arcs([], n(0), n(1));
        assert_eq!(glue_slice(&path_rst(), n(1), n(2), &top), path_rst());
    }

    #[test]
    fn glue_graph_cases() {
        let s = path_rst();
        assert!(glue_graph(&s, n(1), n(2), []).is_empty());
        let single = glue_graph(&s, n(1), n(2), [&t_p()]);
        assert_eq!(single.len(), 1);
        let both = glue_graph(&s, n(1), n(2), [&t_p(), &t_prime()]);
        assert_eq!(both.len(), 2);
        assert!(both.contains(&glue_slice(&s, n(1), n(2), &t_prime())));
    }

    #[test]
    fn glue_is_independent_of_template_names() {
        let s = path_rst();
        let t = Slice::from_arcs([arc(3, name("p"), 7), arc(7, name("q"), 5)], n(3), n(5));
        let t2 = t.rename(|x| NodeId(50 - x.0));
        assert_eq!(
            canonicalize(&glue_slice(&s, n(1), n(2), &t)),
            canonicalize(&glue_slice(&s, n(1), n(2), &t2))
        );
    }

    #[test]
    fn eliminate_identity_arc() {
        // x=0, u=1, v=2, y=3
        let s = Slice::from_arcs(
            [
                arc(0, name("t"), 3),
                arc(0, name("r"), 1),
                arc(1, Label::Id, 2),
                arc(2, name("s"), 3),
            ],
            n(0),
            n(3),
        );
        let out = eliminate_id_arc(&s, &arc(1, Label::Id, 2)).unwrap();
        let expected = Slice::from_arcs(
            [arc(0, name("t"), 3), arc(0, name("r"), 2), arc(2, name("s"), 3)],
            n(0),
            n(3),
        );
        assert_eq!(out, expected);
    }

    #[test]
    fn eliminate_identity_loop_and_input() {
        let s = Slice::from_arcs([arc(0, Label::Id, 0), arc(0, name("p"), 1)], n(0), n(1));
        let out = eliminate_id_arc(&s, &arc(0, Label::Id, 0)).unwrap();
        assert_eq!(out.nodes(), s.nodes());
        assert_eq!(out.arcs().len(), 1);

        let s = Slice::from_arcs([arc(0, Label::Id, 1)], n(0), n(1));
        let out = eliminate_id_arc(&s, &arc(0, Label::Id, 1)).unwrap();
        assert_eq!(out.input(), n(1));
        assert_eq!(out.output(), n(1));
    }

    #[test]
    fn eliminate_rejects_bad_arcs() {
        let s = Slice::from_arcs([arc(0, name("p"), 1)], n(0), n(1));
        assert_eq!(
            eliminate_id_arc(&s, &arc(0, name("p"), 1)).unwrap_err(),
            GraphError::NotIdentityArc
        );
        assert_eq!(
            eliminate_id_arc(&s, &arc(0, Label::Id, 1)).unwrap_err(),
            GraphError::ArcNotFound
        );
    }

    #[test]
    fn slice_of_graph_shapes() {
        let s1 = single_arc_slice(name("p"));
        let s2 = single_arc_slice(name("q"));
        let two = slice_of_graph([&s1, &s2]);
        assert_eq!(two.arcs().len(), 2);
        assert!(two.has_arc(&arc(0, Label::compl_slice(&s1), 1)));
        assert!(two.has_arc(&arc(0, Label::compl_slice(&s2), 1)));
        let empty = slice_of_graph([]);
        assert!(empty.arcs().is_empty());
        assert_eq!(empty.nodes().len(), 2);
        assert_eq!(slice_of_graph([&s1]).arcs().len(), 1);
    }

    #[test]
    fn graph_of_small_slice() {
        // w=5 input, z=6 output
        let s = Slice::from_arcs(
            [arc(5, name("r"), 6), arc(6, name("s"), 5), arc(5, name("t"), 5)],
            n(5),
            n(6),
        );
        let g = graph_of_slice(&s).unwrap();
        let expect = |u: u32, l: &str, v: u32| {
            Slice::new(Draft::new([n(0), n(1)], [arc(u, name(l).compl(), v)]).unwrap(), n(0), n(1)).unwrap()
        };
        assert_eq!(
            g,
            Graph::from_slices([expect(0, "r", 1), expect(1, "s", 0), expect(0, "t", 0)])
        );
        assert_eq!(g.len(), 3);
        assert!(graph_of_slice(&Slice::from_arcs([], n(0), n(1))).unwrap().is_empty());
        assert!(graph_of_slice(&path_rst()).is_err());
    }

    #[test]
    fn smallness() {
        assert!(is_small(&Slice::from_arcs([], n(0), n(0))));
        let three = Slice::from_arcs([arc(0, name("p"), 2), arc(2, name("q"), 1)], n(0), n(1));
        assert!(!is_small(&three));
    }
}
