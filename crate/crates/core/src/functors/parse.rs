use std::fmt;

use crate::complexes::{parse_object, Cursor, ObjExpr};
use crate::error::{Error, Result};

/// Syntax tree of a functor expression.
///
/// `Compose(f, g)` applies `g` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FunctorExpr {
    Id,
    Shift(i32),
    Serre,
    SerreInv,
    Twist(ObjExpr),
    DualTwist(ObjExpr),
    /// `Σ^{k_c}` on the summands of connected component `c`; only built
    /// programmatically.
    VertexShift(Vec<i32>),
    Compose(Box<FunctorExpr>, Box<FunctorExpr>),
    Power(Box<FunctorExpr>, u32),
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorExpr::Id => write!(f, "id"),
            FunctorExpr::Shift(k) => write!(f, "Sigma^{k}"),
            FunctorExpr::Serre => write!(f, "nu"),
            FunctorExpr::SerreInv => write!(f, "nu^-1"),
            FunctorExpr::Twist(x) => write!(f, "T[{x}]"),
            FunctorExpr::DualTwist(x) => write!(f, "Td[{x}]"),
            FunctorExpr::VertexShift(v) => write!(f, "shift{v:?}"),
            FunctorExpr::Compose(a, b) => write!(f, "({a} * {b})"),
            FunctorExpr::Power(a, k) => write!(f, "({a})^{k}"),
        }
    }
}

impl FunctorExpr {
    pub fn parse(text: &str) -> Result<FunctorExpr> {
        let mut c = Cursor { chars: text.chars().collect(), pos: 0, base: 0 };
        let e = expr(&mut c)?;
        if let Some(ch) = c.peek() {
            return Err(c.error(format!("unexpected '{ch}'")));
        }
        Ok(e)
    }

    pub fn is_invertible(&self) -> bool {
        match self {
            FunctorExpr::Twist(_) | FunctorExpr::DualTwist(_) => false,
            FunctorExpr::Compose(a, b) => a.is_invertible() && b.is_invertible(),
            FunctorExpr::Power(a, k) => *k == 0 || a.is_invertible(),
            _ => true,
        }
    }

    pub fn inverse(&self) -> Result<FunctorExpr> {
        Ok(match self {
            FunctorExpr::Id => FunctorExpr::Id,
            FunctorExpr::Shift(k) => FunctorExpr::Shift(-k),
            FunctorExpr::Serre => FunctorExpr::SerreInv,
            FunctorExpr::SerreInv => FunctorExpr::Serre,
            FunctorExpr::VertexShift(v) => FunctorExpr::VertexShift(v.iter().map(|k| -k).collect()),
            FunctorExpr::Compose(a, b) => FunctorExpr::Compose(Box::new(b.inverse()?), Box::new(a.inverse()?)),
            FunctorExpr::Power(_, 0) => FunctorExpr::Id,
            FunctorExpr::Power(a, k) => FunctorExpr::Power(Box::new(a.inverse()?), *k),
            FunctorExpr::Twist(_) | FunctorExpr::DualTwist(_) => {
                return Err(Error::NonInvertibleFunctor(self.to_string()))
            }
        })
    }

    fn power(self, k: i32) -> Result<FunctorExpr> {
        if k < 0 {
            if !self.is_invertible() {
                return Err(Error::NegativePowerOfNonInvertible);
            }
            return self.inverse()?.power(-k);
        }
        Ok(match (self, k) {
            (FunctorExpr::Shift(s), _) => FunctorExpr::Shift(s * k),
            (_, 0) => FunctorExpr::Id,
            (f, 1) => f,
            (f, _) => FunctorExpr::Power(Box::new(f), k as u32),
        })
    }
}

fn expr(c: &mut Cursor) -> Result<FunctorExpr> {
    let mut acc = term(c)?;
    while c.eat('*') {
        let rhs = term(c)?;
        acc = FunctorExpr::Compose(Box::new(acc), Box::new(rhs));
    }
    Ok(acc)
}

fn term(c: &mut Cursor) -> Result<FunctorExpr> {
    let a = atom(c)?;
    if c.eat('^') {
        let k = c.integer()?;
        return a.power(k);
    }
    Ok(a)
}

fn word(c: &mut Cursor) -> String {
    c.skip_ws();
    let start = c.pos;
    while c.chars.get(c.pos).is_some_and(|ch| ch.is_ascii_alphabetic()) {
        c.pos += 1;
    }
    c.chars[start..c.pos].iter().collect()
}

/// Text between a `[` just consumed and its matching `]`.
fn bracketed(c: &mut Cursor) -> Result<(String, usize)> {
    let start = c.pos;
    let mut depth = 1;
    while let Some(&ch) = c.chars.get(c.pos) {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth == 0 {
                    let inner = c.chars[start..c.pos].iter().collect();
                    c.pos += 1;
                    return Ok((inner, start));
                }
            }
            _ => {}
        }
        c.pos += 1;
    }
    c.pos = start;
    Err(c.error("unclosed '['"))
}

fn atom(c: &mut Cursor) -> Result<FunctorExpr> {
    if c.eat('(') {
        let e = expr(c)?;
        c.expect(')')?;
        return Ok(e);
    }
    let start = c.pos;
    let w = word(c);
    match w.as_str() {
        "Sigma" => Ok(FunctorExpr::Shift(1)),
        "nu" => Ok(FunctorExpr::Serre),
        "id" => Ok(FunctorExpr::Id),
        "T" | "Td" => {
            if c.chars.get(c.pos) != Some(&'[') {
                return Err(c.error("expected '['"));
            }
            c.pos += 1;
            let (inner, offset) = bracketed(c)?;
            let obj = parse_object(&inner, c.base + offset)?;
            Ok(if w == "T" { FunctorExpr::Twist(obj) } else { FunctorExpr::DualTwist(obj) })
        }
        "" => match c.peek() {
            Some(ch) => Err(c.error(format!("unexpected '{ch}'"))),
            None => Err(c.error("unexpected end of input")),
        },
        _ => {
            c.pos = start;
            c.skip_ws();
            Err(c.error(format!("unknown functor '{w}'")))
        }
    }
}
