//! Text grammar for polynomials: variables `x0..x9`, integer or `a/b`
//! coefficients, `+ - * ^`, parentheses. Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::monomial::Monomial;
use super::poly::Poly;
use super::scalar::Field;
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, nvars: usize, field: Field) -> Result<Poly> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        nvars,
        field,
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a comma-separated list of polynomials.
pub fn parse_poly_list(text: &str, nvars: usize, field: Field) -> Result<Vec<Poly>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_poly(s, nvars, field))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((pos, Tok::Plus)),
            '-' | '\u{2212}' => out.push((pos, Tok::Minus)),
            '*' => out.push((pos, Tok::Star)),
            '/' => out.push((pos, Tok::Slash)),
            '^' => out.push((pos, Tok::Caret)),
            '(' => out.push((pos, Tok::LParen)),
            ')' => out.push((pos, Tok::RParen)),
            'x' => {
                let mut j = i + 1;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(Error::Parse {
                        pos,
                        msg: "variable needs an index".into(),
                    });
                }
                let idx: String = chars[i + 1..j].iter().map(|c| c.1).collect();
                let idx: usize = idx.parse().map_err(|_| Error::Parse {
                    pos,
                    msg: "bad variable index".into(),
                })?;
                out.push((pos, Tok::Var(idx)));
                i = j;
                continue;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().map(|c| c.1).collect();
                out.push((pos, Tok::Num(s.parse().expect("digits"))));
                i = j;
                continue;
            }
            other => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    nvars: usize,
    field: Field,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn err(&self, msg: &str) -> Error {
        let pos = self
            .toks
            .get(self.pos)
            .map(|t| t.0)
            .unwrap_or_else(|| self.toks.last().map_or(0, |t| t.0 + 1));
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e, self.field))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut den = BigInt::from(1);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            den = d;
                        }
                        _ => return Err(self.err("bad rational literal")),
                    }
                }
                let q = BigRational::new(n, den);
                Ok(Poly::constant(self.field.from_rational(&q)?))
            }
            Some(Tok::Var(i)) => {
                if i >= self.nvars {
                    return Err(Error::VariableOutOfRange {
                        var: i,
                        nvars: self.nvars,
                    });
                }
                self.pos += 1;
                Ok(Poly::monomial(Monomial::var(i), self.field.one()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected a number, variable, or '('")),
        }
    }
}
