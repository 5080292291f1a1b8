//! Human-readable text form.
//!
//! Printing lists terms by ascending total degree, and within one degree in
//! descending lexicographic order, e.g. `1 + y1 + y2 + 2*y1*y2 + y1^2*y2`.
//! The parser accepts sums, products, integer powers (including negative
//! powers of monomials) and parentheses.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{mono_degree, Int, Poly, PolyError, VarArena};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn write_monomial(f: &mut fmt::Formatter<'_>, arena: &VarArena, m: &[i32]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(arena.name(i))?;
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut order: Vec<usize> = (0..self.terms.len()).collect();
        order.sort_by(|&a, &b| {
            let (ma, mb) = (&self.terms[a].0, &self.terms[b].0);
            mono_degree(ma).cmp(&mono_degree(mb)).then_with(|| mb.cmp(ma))
        });
        for (pos, &t) in order.iter().enumerate() {
            let (m, c) = &self.terms[t];
            let is_const = m.iter().all(|&e| e == 0);
            let mag = c.abs();
            if pos == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if is_const {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, &self.arena, m)?;
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Text form with the monomial content factored out, e.g.
    /// `x1^-1*x2^-1*(x1 + y2 + y1*y2*x2)`.
    pub fn to_factored_string(&self) -> String {
        let Ok(mins) = self.min_exponents() else {
            return "0".into();
        };
        if mins.iter().all(|&e| e == 0) || self.is_monomial() {
            return self.to_string();
        }
        let neg: Vec<i32> = mins.iter().map(|e| -e).collect();
        let rest = self.shift(&neg);
        struct M<'a>(&'a VarArena, &'a [i32]);
        impl fmt::Display for M<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_monomial(f, self.0, self.1)
            }
        }
        if rest.is_monomial() {
            return self.to_string();
        }
        format!("{}*({})", M(&self.arena, &mins), rest)
    }

    pub fn parse(arena: &Arc<VarArena>, s: &str) -> Result<Poly, PolyError> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
            arena,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input").into());
        }
        Ok(v)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    arena: &'a Arc<VarArena>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.term()?.neg()
        } else {
            if self.peek() == Some(b'+') {
                self.pos += 1;
            }
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.signed_int()?;
            let e = i32::try_from(e).map_err(|_| self.err("exponent out of range"))?;
            return base.powi(e);
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64, PolyError> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer").into());
        }
        let v: i64 = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'").into());
            }
            self.pos += 1;
        }
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'").into());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let c: Int = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err("bad integer"))?;
                Ok(Poly::constant(self.arena, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self
                    .arena
                    .index_of(name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
                Ok(Poly::var(self.arena, i))
            }
            _ => Err(self.err("expected term").into()),
        }
    }
}
