//! Text syntax for torus elements.
//!
//! Products are evaluated left to right in the noncommutative torus, so
//! `A*B` and `B*A` differ by the appropriate power of `q`. Grammar:
//!
//! ```text
//! expr   := ['-'|'+'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' exponent]
//! atom   := integer | 'q' | vertex | '(' expr ')'
//! exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! ```
//! Integers may be divided: `3/4` inside a term is the rational `3/4`.

use std::sync::Arc;

use num::{BigInt, One};

use super::coeff::{Coeff, QPowerPoly, Rat};
use super::element::{Torus, TorusElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let st = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let t: String = cs[st..i].iter().collect();
                out.push(Tok::Int(t.parse().unwrap()));
            }
            a if a.is_alphanumeric() || a == '_' => {
                let st = i;
                while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(cs[st..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    torus: &'a Arc<Torus>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(x) if x == t => Ok(()),
            other => Err(Error::Parse(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<TorusElement> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                neg = true;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.try_add(&t)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.try_sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen))
    }

    fn term(&mut self) -> Result<TorusElement> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.try_mul(&f)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = match self.next() {
                        Some(Tok::Int(d)) => d,
                        other => return Err(Error::Parse(format!("only integer divisors allowed, found {other:?}"))),
                    };
                    if d == BigInt::from(0) {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    acc = acc.scale_rational(&Coeff::new(BigInt::one(), d));
                }
                _ if self.starts_atom() => {
                    let f = self.factor()?;
                    acc = acc.try_mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Int(n)) => {
                let v: i64 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                Ok(if neg { -v } else { v })
            }
            other => Err(Error::Parse(format!("expected integer, found {other:?}"))),
        }
    }

    fn exponent(&mut self) -> Result<Rat> {
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let n = self.small_int()?;
            let d = if self.peek() == Some(&Tok::Slash) {
                self.pos += 1;
                self.small_int()?
            } else {
                1
            };
            self.expect(Tok::RParen)?;
            if d == 0 {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rat::new(n, d))
        } else {
            Ok(Rat::from_integer(self.small_int()?))
        }
    }

    fn factor(&mut self) -> Result<TorusElement> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.exponent()?;
            return if e.is_integer() && base.num_terms() > 1 {
                base.pow(*e.numer())
            } else {
                base.mono_pow(e)
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<TorusElement> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(TorusElement::scalar(self.torus, QPowerPoly::constant(Coeff::from_integer(n)))),
            Some(Tok::Ident(name)) if name == "q" => Ok(TorusElement::qpow(self.torus, Rat::from_integer(1))),
            Some(Tok::Ident(name)) => TorusElement::var(self.torus, &name, Rat::from_integer(1))
                .map_err(|_| Error::Parse(format!("unknown vertex {name}"))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an expression into `torus`, multiplying factors in the order written.
pub fn parse_element(torus: &Arc<Torus>, s: &str) -> Result<TorusElement> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, torus };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(e)
}
