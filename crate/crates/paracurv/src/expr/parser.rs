//! Recursive-descent parser for the infix expression grammar.
//!
//! ```text
//! expr   := term (("+"|"-") term)*
//! term   := factor (("*"|"/") factor)*
//! factor := ("-")? power
//! power  := atom ("^" factor)?
//! atom   := number | ident | ident "(" expr ")" | "(" expr ")"
//! number := integer | integer "/" integer | decimal
//! ```
//!
//! Power is right-associative and its exponent must fold to a constant.
//! Identifiers are chart coordinates or one of exp/sin/cos/sinh/cosh.

use super::{Expr, Func, Number};
use crate::chart::Chart;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("exponent is not a constant at byte {offset}")]
    NonConstantExponent { offset: usize },
}

pub fn parse(source: &str, chart: &Chart) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: source,
        pos: 0,
        chart,
    };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(ParseError::Syntax {
            offset: p.pos,
            message: "unexpected trailing input".into(),
        });
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    chart: &'a Chart,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    self.skip_ws();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Arc::new(lhs), Arc::new(rhs));
                }
                Some('-') => {
                    self.bump();
                    self.skip_ws();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Arc::new(lhs), Arc::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    self.skip_ws();
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Arc::new(lhs), Arc::new(rhs));
                }
                Some('/') => {
                    self.bump();
                    self.skip_ws();
                    let rhs = self.factor()?;
                    lhs = Expr::Div(Arc::new(lhs), Arc::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if self.eat('-') {
            self.skip_ws();
            let inner = self.power()?;
            Ok(Expr::Neg(Arc::new(inner)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.eat('^') {
            self.skip_ws();
            let exp_offset = self.pos;
            let exp = self.factor()?;
            let n = exp
                .const_value()
                .ok_or(ParseError::NonConstantExponent { offset: exp_offset })?;
            Ok(Expr::Pow(Arc::new(base), n))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                self.skip_ws();
                if !self.eat(')') {
                    return Err(self.syntax("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_alphabetic() || c == '_' => self.ident(),
            Some(c) => Err(self.syntax(format!("unexpected character `{c}`"))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn ident(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.bump();
        }
        let name = &self.src[start..self.pos];
        if let Some(f) = Func::from_name(name) {
            self.skip_ws();
            if !self.eat('(') {
                return Err(self.syntax(format!("expected `(` after function `{name}`")));
            }
            let arg = self.expr()?;
            self.skip_ws();
            if !self.eat(')') {
                return Err(self.syntax("expected `)`"));
            }
            return Ok(Expr::Func(f, Arc::new(arg)));
        }
        match self.chart.index_of(name) {
            Some(i) => Ok(Expr::Coord(i)),
            None => Err(ParseError::UnknownIdentifier {
                offset: start,
                name: name.to_string(),
            }),
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let int_part = self.digits();
        debug_assert!(!int_part.is_empty());

        // decimal: digits "." digits, optional exponent
        if self.peek() == Some('.') {
            self.bump();
            if self.digits().is_empty() {
                return Err(self.syntax("expected digits after decimal point"));
            }
            self.maybe_exponent();
            let text = &self.src[start..self.pos];
            let v: f64 = text
                .parse()
                .map_err(|_| self.syntax(format!("invalid number `{text}`")))?;
            return Ok(Expr::Const(Number::Float(v)));
        }

        // scientific notation without a decimal point, e.g. 1e-3
        if matches!(self.peek(), Some('e' | 'E')) && self.maybe_exponent() {
            let text = &self.src[start..self.pos];
            let v: f64 = text
                .parse()
                .map_err(|_| self.syntax(format!("invalid number `{text}`")))?;
            return Ok(Expr::Const(Number::Float(v)));
        }

        // exact rational: integer "/" integer with no intervening whitespace
        if self.peek() == Some('/') {
            let save = self.pos;
            self.bump();
            let denom = self.digits();
            if denom.is_empty() {
                self.pos = save; // plain division, e.g. "6/x"
            } else {
                let p: i64 = int_part
                    .parse()
                    .map_err(|_| self.syntax("integer literal out of range"))?;
                let q: i64 = denom
                    .parse()
                    .map_err(|_| self.syntax("integer literal out of range"))?;
                if q == 0 {
                    return Err(ParseError::Syntax {
                        offset: start,
                        message: "rational constant with zero denominator".into(),
                    });
                }
                return Ok(Expr::Const(Number::rational(p, q)));
            }
        }

        match int_part.parse::<i64>() {
            Ok(n) => Ok(Expr::Const(Number::integer(n))),
            Err(_) => {
                let v: f64 = int_part
                    .parse()
                    .map_err(|_| self.syntax(format!("invalid number `{int_part}`")))?;
                Ok(Expr::Const(Number::Float(v)))
            }
        }
    }

    /// Consumes `[eE][+-]?digits` if fully present; leaves position untouched
    /// and returns false otherwise.
    fn maybe_exponent(&mut self) -> bool {
        let save = self.pos;
        if matches!(self.peek(), Some('e' | 'E')) {
            self.bump();
            if matches!(self.peek(), Some('+' | '-')) {
                self.bump();
            }
            if !self.digits().is_empty() {
                return true;
            }
            self.pos = save;
        }
        false
    }
}
