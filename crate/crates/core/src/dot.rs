//! Graphviz DOT output for slices and graphs.
//!
//! Each slice is a cluster; the input is drawn as a box and the output as a
//! double circle. An arc `u ~T v` is an edge labeled `~T<k>` and `T` is drawn
//! as a dashed cluster `T<k>` nested in the slice that holds the arc.

use crate::graph::{render_label, Graph, Label, NodeId, Slice};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

struct Writer {
    out: String,
    clusters: usize,
}

impl Writer {
    fn line(&mut self, depth: usize, text: &str) {
        for _ in 0..depth {
            self.out.push_str("  ");
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn slice(&mut self, s: &Slice, prefix: &str, title: &str, dashed: bool, depth: usize) {
        self.clusters += 1;
        let id = self.clusters;
        self.line(depth, &format!("subgraph cluster_{id} {{"));
        self.line(depth + 1, &format!("label={};", quote(title)));
        if dashed {
            self.line(depth + 1, "style=dashed;");
        }
        let node = |n: NodeId| quote(&format!("{prefix}{n}"));
        for &n in s.nodes() {
            let shape = match (n == s.input(), n == s.output()) {
                (true, true) => "doubleoctagon",
                (true, false) => "box",
                (false, true) => "doublecircle",
                (false, false) => "circle",
            };
            self.line(
                depth + 1,
                &format!("{} [label={}, shape={shape}];", node(n), quote(&n.to_string())),
            );
        }
        for a in s.arcs() {
            let label = match a.label.as_compl_slice() {
                Some(t) => {
                    let tag = format!("T{}", self.clusters + 1);
                    let inner = format!("{prefix}{tag}_");
                    self.slice(t, &inner, &format!("~{tag}"), true, depth + 1);
                    format!("~{tag}")
                }
                None => match &a.label {
                    Label::Name(x) => x.clone(),
                    other => render_label(other),
                },
            };
            self.line(
                depth + 1,
                &format!("{} -> {} [label={}];", node(a.source), node(a.target), quote(&label)),
            );
        }
        self.line(depth, "}");
    }
}

/// DOT for a graph: one cluster per member slice.
pub fn graph_to_dot(g: &Graph) -> String {
    let mut w = Writer {
        out: String::new(),
        clusters: 0,
    };
    w.line(0, "digraph relgraph {");
    w.line(1, "compound=true;");
    if g.is_empty() {
        w.line(1, "empty [label=\"{}\", shape=plaintext];");
    }
    for (i, s) in g.iter().enumerate() {
        w.slice(s, &format!("s{i}_"), &format!("S{i}"), false, 1);
    }
    w.line(0, "}");
    w.out
}

/// DOT for a single slice.
pub fn slice_to_dot(s: &Slice) -> String {
    graph_to_dot(&Graph::from_slices([s.clone()]))
}

/// DOT for a label, drawn as the single-arc slice carrying it.
pub fn label_to_dot(l: &Label) -> String {
    slice_to_dot(&crate::graph::single_arc_slice(l.clone()))
}
