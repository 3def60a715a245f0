//! A small expression parser for polynomials with rational coefficients.
//!
//! Grammar: `+ - * ^` and parentheses over integer/rational literals and the
//! declared variable names. `/` is only legal directly between two integer
//! literals (a rational coefficient such as `1/2`), never as polynomial
//! division. Used by tests and by the document frontend.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Poly, QPoly, VarSet};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push(Tok::Int(chars[start..i].iter().collect()));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(Error::Structural(format!(
                    "unexpected character {other:?} in polynomial"
                )))
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a Arc<VarSet>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<QPoly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.power()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<QPoly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .parse()
                        .map_err(|_| Error::Structural(format!("bad exponent {n}")))?;
                    if e == 0 {
                        return Ok(Poly::constant(self.vars, Rational::one()));
                    }
                    Ok(base.pow(e))
                }
                other => Err(Error::Structural(format!(
                    "expected integer exponent, found {other:?}"
                ))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<QPoly> {
        match self.bump() {
            Some(Tok::Minus) => Ok(self.atom()?.neg()),
            Some(Tok::Int(n)) => {
                let numer: Rational = n
                    .parse()
                    .map_err(|e| Error::Structural(format!("bad integer {n}: {e}")))?;
                // A rational literal p/q.
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            let denom: Rational = d
                                .parse()
                                .map_err(|e| Error::Structural(format!("bad integer {d}: {e}")))?;
                            if denom.is_zero() {
                                return Err(Error::Structural("zero denominator".into()));
                            }
                            Ok(Poly::constant(self.vars, numer / denom))
                        }
                        other => Err(Error::Structural(format!(
                            "expected denominator after '/', found {other:?}"
                        ))),
                    }
                } else {
                    Ok(Poly::constant(self.vars, numer))
                }
            }
            Some(Tok::Ident(name)) => match self.vars.index_of(&name) {
                Some(idx) => Ok(Poly::var(self.vars, idx, Rational::one())),
                None => Err(Error::Structural(format!("unknown variable {name}"))),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    other => Err(Error::Structural(format!(
                        "expected ')', found {other:?}"
                    ))),
                }
            }
            other => Err(Error::Structural(format!(
                "unexpected token {other:?} in polynomial"
            ))),
        }
    }
}

/// Parse a polynomial with rational coefficients over the given variables.
pub fn parse_qpoly(text: &str, vars: &Arc<VarSet>) -> Result<QPoly> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Structural("empty polynomial".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Structural(format!(
            "trailing tokens in polynomial at position {}",
            p.pos
        )));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarSet;

    #[test]
    fn parses_spec_shapes() {
        let vars = VarSet::new(vec!["x", "y"]);
        for src in ["x^2-y^3", "(x^2-y^3)*y", "1/2*x + y^5", "-x + 3"] {
            parse_qpoly(src, &vars).unwrap();
        }
        assert!(parse_qpoly("z + 1", &vars).is_err());
        assert!(parse_qpoly("x +", &vars).is_err());
    }

    #[test]
    fn rational_coefficients() {
        let vars = VarSet::new(vec!["x", "y"]);
        let p = parse_qpoly("3/4*x", &vars).unwrap();
        let q = parse_qpoly("x", &vars).unwrap().scale(&Rational::new(3, 4));
        assert_eq!(p, q);
    }
}
