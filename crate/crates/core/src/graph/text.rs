//! Human-readable rendering of labels and slices.
//!
//! A slice prints as `[in -> out | arc, arc]` where each arc is
//! `source label target`; a graph literal prints as `{slice, slice}`.

use super::{Label, Slice};

pub fn render_label(l: &Label) -> String {
    let mut out = String::new();
    write_label(l, &mut out);
    out
}

pub fn render_slice(s: &Slice) -> String {
    let mut out = String::new();
    write_slice(s, &mut out);
    out
}

fn is_atomic(l: &Label) -> bool {
    matches!(
        l,
        Label::Name(_) | Label::Bottom | Label::Top | Label::Id | Label::Di | Label::Slice(_) | Label::Graph(_)
    )
}

fn write_operand(l: &Label, out: &mut String) {
    if is_atomic(l) || matches!(l, Label::Compl(_) | Label::Conv(_)) {
        write_label(l, out);
    } else {
        out.push('(');
        write_label(l, out);
        out.push(')');
    }
}

fn write_label(l: &Label, out: &mut String) {
    match l {
        Label::Name(n) => out.push_str(n),
        Label::Bottom => out.push('0'),
        Label::Top => out.push('1'),
        Label::Id => out.push('I'),
        Label::Di => out.push('D'),
        Label::Compl(a) => {
            out.push('~');
            write_operand(a, out);
        }
        Label::Conv(a) => {
            if matches!(**a, Label::Compl(_)) {
                out.push('(');
                write_label(a, out);
                out.push(')');
            } else {
                write_operand(a, out);
            }
            out.push('^');
        }
        Label::Meet(a, b) | Label::Join(a, b) | Label::RelProd(a, b) | Label::RelSum(a, b) => {
            let op = match l {
                Label::Meet(..) => " & ",
                Label::Join(..) => " | ",
                Label::RelProd(..) => ";",
                _ => "!",
            };
            write_operand(a, out);
            out.push_str(op);
            write_operand(b, out);
        }
        Label::Slice(s) => write_slice(s, out),
        Label::Graph(g) => {
            out.push('{');
            for (i, s) in g.slices().iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_slice(s, out);
            }
            out.push('}');
        }
    }
}

fn write_slice(s: &Slice, out: &mut String) {
    out.push_str(&format!("[{} -> {} |", s.input(), s.output()));
    let isolated: Vec<_> = s
        .nodes()
        .iter()
        .filter(|&&n| {
            n != s.input()
                && n != s.output()
                && !s.arcs().iter().any(|a| a.source == n || a.target == n)
        })
        .collect();
    let mut first = true;
    for a in s.arcs() {
        out.push_str(if first { " " } else { ", " });
        first = false;
        out.push_str(&format!("{} ", a.source));
        if is_atomic(&a.label) || matches!(a.label, Label::Compl(_) | Label::Conv(_)) {
            write_label(&a.label, out);
        } else {
            out.push('(');
            write_label(&a.label, out);
            out.push(')');
        }
        out.push_str(&format!(" {}", a.target));
    }
    for n in isolated {
        out.push_str(if first { " " } else { ", " });
        first = false;
        out.push_str(&n.to_string());
    }
    out.push(']');
}
