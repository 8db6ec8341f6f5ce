//! Term printer. The output always parses back to the same tree.

use super::Term;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Op {
    Join,
    Meet,
    Sum,
    Prod,
}

impl Op {
    fn symbol(self) -> &'static str {
        match self {
            Op::Join => " | ",
            Op::Meet => " & ",
            Op::Sum => "!",
            Op::Prod => ";",
        }
    }
}

fn binary(t: &Term) -> Option<(Op, &Term, &Term)> {
    match t {
        Term::Join(a, b) => Some((Op::Join, a, b)),
        Term::Meet(a, b) => Some((Op::Meet, a, b)),
        Term::RelSum(a, b) => Some((Op::Sum, a, b)),
        Term::RelProd(a, b) => Some((Op::Prod, a, b)),
        _ => None,
    }
}

/// Renders a term in the surface syntax.
///
/// A binary operand is parenthesized when its operator differs from the
/// parent's, or when it sits on the right of the same operator. Unary
/// operands are parenthesized only when needed.
pub fn render_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Name(n) => out.push_str(n),
        Term::Bottom => out.push('0'),
        Term::Top => out.push('1'),
        Term::Id => out.push('I'),
        Term::Di => out.push('D'),
        Term::Compl(inner) => {
            out.push('~');
            write_wrapped(inner, binary(inner).is_some(), out);
        }
        Term::Conv(inner) => {
            let wrap = binary(inner).is_some() || matches!(**inner, Term::Compl(_));
            write_wrapped(inner, wrap, out);
            out.push('^');
        }
        _ => {
            let (op, a, b) = binary(t).expect("binary term");
            let wrap_left = matches!(binary(a), Some((o, _, _)) if o != op);
            write_wrapped(a, wrap_left, out);
            out.push_str(op.symbol());
            write_wrapped(b, binary(b).is_some(), out);
        }
    }
}

fn write_wrapped(t: &Term, wrap: bool, out: &mut String) {
    if wrap {
        out.push('(');
        write_term(t, out);
        out.push(')');
    } else {
        write_term(t, out);
    }
}
