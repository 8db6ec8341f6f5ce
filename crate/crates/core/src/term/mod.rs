//! Relational terms: abstract syntax, text parser and printer.
//!
//! Surface syntax, tightest binding first: postfix `^` (converse), prefix `~`
//! (complement), `;` (relative product), `!` (relative sum), `&` (meet) and
//! `|` (join). Binary operators associate to the left. The constants are `0`
//! (empty relation), `1` (universal relation), `I` (identity) and `D`
//! (diversity). Names match `[a-z][a-zA-Z0-9_']*`.

mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use parse::{parse_inclusion, parse_term, ParseError};
pub use print::render_term;

/// A relational term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Name(String),
    Bottom,
    Top,
    Id,
    Di,
    Compl(Box<Term>),
    Conv(Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    RelProd(Box<Term>, Box<Term>),
    RelSum(Box<Term>, Box<Term>),
}

impl Term {
    pub fn name(n: impl Into<String>) -> Term {
        Term::Name(n.into())
    }

    pub fn compl(self) -> Term {
        Term::Compl(Box::new(self))
    }

    pub fn conv(self) -> Term {
        Term::Conv(Box::new(self))
    }

    pub fn meet(self, other: Term) -> Term {
        Term::Meet(Box::new(self), Box::new(other))
    }

    pub fn join(self, other: Term) -> Term {
        Term::Join(Box::new(self), Box::new(other))
    }

    pub fn rel_prod(self, other: Term) -> Term {
        Term::RelProd(Box::new(self), Box::new(other))
    }

    pub fn rel_sum(self, other: Term) -> Term {
        Term::RelSum(Box::new(self), Box::new(other))
    }

    /// Relation names occurring in the term, in sorted order.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    pub(crate) fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Name(n) => {
                out.insert(n.clone());
            }
            Term::Bottom | Term::Top | Term::Id | Term::Di => {}
            Term::Compl(t) | Term::Conv(t) => t.collect_names(out),
            Term::Meet(a, b) | Term::Join(a, b) | Term::RelProd(a, b) | Term::RelSum(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
        }
    }

    /// Height of the syntax tree; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Name(_) | Term::Bottom | Term::Top | Term::Id | Term::Di => 0,
            Term::Compl(t) | Term::Conv(t) => 1 + t.depth(),
            Term::Meet(a, b) | Term::Join(a, b) | Term::RelProd(a, b) | Term::RelSum(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}

/// An inclusion `lhs <= rhs` between terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inclusion {
    pub lhs: Term,
    pub rhs: Term,
}

impl Inclusion {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Inclusion { lhs, rhs }
    }

    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.lhs.collect_names(&mut out);
        self.rhs.collect_names(&mut out);
        out
    }
}

impl fmt::Display for Inclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}

/// True if `s` is a valid relation name.
pub fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(is_name_char)
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_sorted_and_deduplicated() {
        let t = parse_term("q;p | p^").unwrap();
        let names: Vec<_> = t.names().into_iter().collect();
        assert_eq!(names, vec!["p", "q"]);
    }

    #[test]
    fn name_class() {
        assert!(is_name("r''"));
        assert!(is_name("a_1B"));
        assert!(!is_name("R"));
        assert!(!is_name("1a"));
        assert!(!is_name(""));
    }

    #[test]
    fn depth_counts_operators() {
        assert_eq!(Term::name("p").depth(), 0);
        assert_eq!(parse_term("~(p;q)").unwrap().depth(), 2);
    }
}
