//! Recursive-descent parser for terms and inclusions.

use std::collections::BTreeSet;
use std::fmt;

use super::{is_name_char, Inclusion, Term};

/// Syntax error with the offending column and the tokens that would have
/// been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    /// One-based character column.
    pub column: usize,
    pub found: String,
    pub expected: BTreeSet<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at column {}: found {}", self.column, self.found)?;
        if !self.expected.is_empty() {
            let list: Vec<&str> = self.expected.iter().copied().collect();
            write!(f, ", expected one of: {}", list.join(" "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Zero,
    One,
    Id,
    Di,
    Tilde,
    Caret,
    Semi,
    Bang,
    Amp,
    Bar,
    LParen,
    RParen,
    Le,
    Eof,
    Bad(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("name `{n}`"),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::Id => "`I`".into(),
            Tok::Di => "`D`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Eof => "end of input".into(),
            Tok::Bad(c) => format!("unexpected character `{c}`"),
        }
    }
}

struct Lexed {
    tok: Tok,
    offset: usize,
}

fn lex(text: &str) -> Vec<Lexed> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        it.next();
        let tok = match c {
            'a'..='z' => {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = it.peek() {
                    if !is_name_char(d) {
                        break;
                    }
                    end = j + d.len_utf8();
                    it.next();
                }
                Tok::Name(text[i..end].to_string())
            }
            '0' => Tok::Zero,
            '1' => Tok::One,
            'I' => Tok::Id,
            'D' => Tok::Di,
            '~' => Tok::Tilde,
            '^' => Tok::Caret,
            ';' => Tok::Semi,
            '!' => Tok::Bang,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '<' => match it.peek() {
                Some(&(_, '=')) => {
                    it.next();
                    Tok::Le
                }
                _ => Tok::Bad('<'),
            },
            other => Tok::Bad(other),
        };
        out.push(Lexed { tok, offset: i });
    }
    out.push(Lexed {
        tok: Tok::Eof,
        offset: text.len(),
    });
    out
}

const ATOM_START: [&str; 7] = ["name", "0", "1", "I", "D", "(", "~"];

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Lexed>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text,
            toks: lex(text),
            pos: 0,
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let lexed = &self.toks[self.pos];
        ParseError {
            offset: lexed.offset,
            column: self.text[..lexed.offset].chars().count() + 1,
            found: lexed.tok.describe(),
            expected: expected.iter().copied().collect(),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.meet()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            lhs = lhs.join(self.meet()?);
        }
        Ok(lhs)
    }

    fn meet(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.sum()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = lhs.meet(self.sum()?);
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.prod()?;
        while *self.peek() == Tok::Bang {
            self.bump();
            lhs = lhs.rel_sum(self.prod()?);
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Semi {
            self.bump();
            lhs = lhs.rel_prod(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Term, ParseError> {
        if *self.peek() == Tok::Tilde {
            self.bump();
            return Ok(self.unary()?.compl());
        }
        let mut t = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            t = t.conv();
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.bump();
                Ok(Term::Name(n))
            }
            Tok::Zero => {
                self.bump();
                Ok(Term::Bottom)
            }
            Tok::One => {
                self.bump();
                Ok(Term::Top)
            }
            Tok::Id => {
                self.bump();
                Ok(Term::Id)
            }
            Tok::Di => {
                self.bump();
                Ok(Term::Di)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["^", ";", "!", "&", "|", ")"]));
                }
                self.bump();
                Ok(t)
            }
            _ => Err(self.error(&ATOM_START)),
        }
    }
}

/// Parses a single term; the whole input must be consumed.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["^", ";", "!", "&", "|", "end of input"]));
    }
    Ok(t)
}

/// Parses `term <= term`.
pub fn parse_inclusion(text: &str) -> Result<Inclusion, ParseError> {
    let mut p = Parser::new(text);
    let lhs = p.term()?;
    if *p.peek() != Tok::Le {
        return Err(p.error(&["^", ";", "!", "&", "|", "<="]));
    }
    p.bump();
    let rhs = p.term()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["^", ";", "!", "&", "|", "end of input"]));
    }
    Ok(Inclusion { lhs, rhs })
}
