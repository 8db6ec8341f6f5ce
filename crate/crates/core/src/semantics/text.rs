//! Plain-text model format.
//!
//! ```text
//! # comments start with '#'
//! size 3
//! r: (0,1)
//! s: (0,2) (2,2)
//! t:
//! ```
//!
//! The `size` line comes first; each following line lists one name's pairs.

use std::fmt::Write;

use thiserror::Error;

use super::{Model, Relation};
use crate::term::is_name;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ModelFormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ModelFormatError {
    ModelFormatError {
        line,
        message: message.into(),
    }
}

pub fn parse_model(text: &str) -> Result<Model, ModelFormatError> {
    let mut model: Option<Model> = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(m) = model.as_mut() else {
            let rest = line
                .strip_prefix("size")
                .ok_or_else(|| err(line_no, "expected `size N` before any relation"))?;
            let size: usize = rest
                .trim()
                .parse()
                .map_err(|_| err(line_no, format!("invalid carrier size `{}`", rest.trim())))?;
            model = Some(Model::new(size));
            continue;
        };
        if line.starts_with("size") && !line.contains(':') {
            return Err(err(line_no, "carrier size given twice"));
        }
        let (name, pairs) = line
            .split_once(':')
            .ok_or_else(|| err(line_no, "expected `name: (a,b) ...`"))?;
        let name = name.trim();
        if !is_name(name) {
            return Err(err(line_no, format!("invalid relation name `{name}`")));
        }
        if m.relations().contains_key(name) {
            return Err(err(line_no, format!("relation `{name}` given twice")));
        }
        let mut rel = Relation::empty(m.size());
        for pair in parse_pairs(pairs).map_err(|e| err(line_no, e))? {
            if pair.0 >= m.size() || pair.1 >= m.size() {
                return Err(err(
                    line_no,
                    format!("pair ({},{}) is outside the carrier 0..{}", pair.0, pair.1, m.size()),
                ));
            }
            rel.insert(pair.0, pair.1);
        }
        m.set(name, rel);
    }
    model.ok_or_else(|| err(last_line.max(1), "missing `size N` line"))
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, String> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected `(` at `{rest}`"))?;
        let close = body.find(')').ok_or("unclosed `(`")?;
        let (a, b) = body[..close]
            .split_once(',')
            .ok_or_else(|| format!("expected `a,b` in `({})`", &body[..close]))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid element `{}`", s.trim()))
        };
        out.push((parse(a)?, parse(b)?));
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

pub fn render_model(m: &Model) -> String {
    let mut out = format!("size {}\n", m.size());
    for (name, rel) in m.relations() {
        let _ = write!(out, "{name}:");
        for (a, b) in rel.pairs() {
            let _ = write!(out, " ({a},{b})");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = Model::new(3)
            .with("r", [(0, 1)])
            .with("s", [(0, 2), (2, 2)])
            .with("t", []);
        let text = render_model(&m);
        assert_eq!(text, "size 3\nr: (0,1)\ns: (0,2) (2,2)\nt:\n");
        assert_eq!(parse_model(&text).unwrap(), m);
    }

    #[test]
    fn comments_and_blank_lines() {
        let m = parse_model("# model\n\nsize 2  # two elements\np: (1,0)\n").unwrap();
        assert_eq!(m.relation("p").pairs(), vec![(1, 0)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_model("p: (0,0)").unwrap_err().line, 1);
        assert_eq!(parse_model("size 2\n\np: (0,2)").unwrap_err().line, 3);
        assert_eq!(parse_model("size 2\nP: (0,1)").unwrap_err().line, 2);
        assert_eq!(parse_model("size 2\np (0,1)").unwrap_err().line, 2);
        assert_eq!(parse_model("size 2\np: (0 1)").unwrap_err().line, 2);
        assert_eq!(parse_model("size 2\np:\np:").unwrap_err().line, 3);
        assert_eq!(parse_model("size x").unwrap_err().line, 1);
        assert!(parse_model("").is_err());
    }
}
