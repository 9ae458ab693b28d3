//! Object expressions: `P1`, `S2`, `I3`, sums with `+`, shifts with `[k]`.
//!
//! `S i` and `I i` denote the projective resolutions of the simple and the
//! injective module at `i`. Parentheses group.

use std::fmt;

use crate::algebra::{projective_resolution, ModuleRep, PathAlgebra};
use crate::complexes::PerfComplex;
use crate::error::{Error, Result};
use crate::scalars::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjKind {
    Projective,
    Simple,
    Injective,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ObjExpr {
    Atom(ObjKind, String),
    Sum(Vec<ObjExpr>),
    Shift(Box<ObjExpr>, i32),
}

impl fmt::Display for ObjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjExpr::Atom(k, v) => {
                let c = match k {
                    ObjKind::Projective => 'P',
                    ObjKind::Simple => 'S',
                    ObjKind::Injective => 'I',
                };
                write!(f, "{c}{v}")
            }
            ObjExpr::Sum(items) => {
                write!(f, "(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            ObjExpr::Shift(x, k) => write!(f, "{x}[{k}]"),
        }
    }
}

impl ObjExpr {
    pub fn parse(text: &str) -> Result<ObjExpr> {
        parse_object(text, 0)
    }

    pub fn resolve<F: Scalar>(&self, alg: &PathAlgebra) -> Result<PerfComplex<F>> {
        Ok(match self {
            ObjExpr::Atom(kind, label) => {
                let v = alg.vertex(label)?;
                match kind {
                    ObjKind::Projective => PerfComplex::stalk(vec![v], 0),
                    ObjKind::Simple => projective_resolution(alg, &ModuleRep::simple(alg, v)),
                    ObjKind::Injective => projective_resolution(alg, &ModuleRep::injective(alg, v)),
                }
            }
            ObjExpr::Sum(items) => {
                let mut acc = PerfComplex::zero();
                for x in items {
                    acc = acc.direct_sum(&x.resolve(alg)?);
                }
                acc
            }
            ObjExpr::Shift(x, k) => x.resolve::<F>(alg)?.shift(*k),
        })
    }
}

/// Parses an object expression; `base` is the 0-based column of `text[0]`
/// in the enclosing input, used for error positions.
pub(crate) fn parse_object(text: &str, base: usize) -> Result<ObjExpr> {
    let mut p = Cursor { chars: text.chars().collect(), pos: 0, base };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(e)
}

pub(crate) struct Cursor {
    pub chars: Vec<char>,
    pub pos: usize,
    pub base: usize,
}

impl Cursor {
    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { column: self.base + self.pos + 1, message: message.into() }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    pub fn integer(&mut self) -> Result<i32> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.error("expected an integer")
        })
    }

    fn label(&mut self) -> Result<String> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a vertex label"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn sum(&mut self) -> Result<ObjExpr> {
        let mut items = vec![self.postfix()?];
        while self.eat('+') {
            items.push(self.postfix()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { ObjExpr::Sum(items) })
    }

    fn postfix(&mut self) -> Result<ObjExpr> {
        let mut e = self.primary()?;
        while self.eat('[') {
            let k = self.integer()?;
            self.expect(']')?;
            e = ObjExpr::Shift(Box::new(e), k);
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<ObjExpr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c @ ('P' | 'S' | 'I')) => {
                self.pos += 1;
                let kind = match c {
                    'P' => ObjKind::Projective,
                    'S' => ObjKind::Simple,
                    _ => ObjKind::Injective,
                };
                Ok(ObjExpr::Atom(kind, self.label()?))
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
