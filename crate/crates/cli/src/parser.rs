//! The ideal-document language.
//!
//! ```text
//! # comment to end of line
//! ring x, y;
//! params u, v;                      # optional
//! C = ideal(x^2 - y^3 + u*y^2);
//! I = intersect(C, ideal(y - u), ideal(x - v, y));
//! analyze I;
//! ```
//!
//! Polynomials use `+ - * ^`, parentheses, integer and `p/q` rational
//! coefficients. Bindings may reference earlier bindings by name inside
//! `intersect`. Syntax errors carry line, column and the offending token.

use std::fmt;
use std::sync::Arc;

use curvedelta::poly::{Poly, QPoly, VarSet};
use curvedelta::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum TokKind {
    Ident(String),
    Int(String),
    Punct(char),
    Eof,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub kind: TokKind,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for TokKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokKind::Ident(s) => write!(f, "identifier {s:?}"),
            TokKind::Int(s) => write!(f, "integer {s}"),
            TokKind::Punct(c) => write!(f, "{c:?}"),
            TokKind::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut toks = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
            }
            ' ' | '\t' | '\r' => {
                col += 1;
                i += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '+' | '-' | '*' | '^' | '(' | ')' | ',' | ';' | '=' | '/' => {
                toks.push(Token {
                    kind: TokKind::Punct(c),
                    line,
                    col,
                });
                col += 1;
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                let startcol = col;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                    col += 1;
                }
                toks.push(Token {
                    kind: TokKind::Int(chars[start..i].iter().collect()),
                    line,
                    col: startcol,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                let startcol = col;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                    col += 1;
                }
                toks.push(Token {
                    kind: TokKind::Ident(chars[start..i].iter().collect()),
                    line,
                    col: startcol,
                });
            }
            other => {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    toks.push(Token {
        kind: TokKind::Eof,
        line,
        col,
    });
    Ok(toks)
}

/// An ideal expression: generators, an intersection, or a reference to an
/// earlier binding.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Ideal(Vec<QPoly>),
    Intersect(Vec<ExprAst>),
    Ref(String),
}

/// A parsed document.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub plane: [String; 2],
    pub params: Vec<String>,
    pub bindings: Vec<(String, ExprAst)>,
    pub target: String,
    pub ring: Arc<VarSet>,
}

struct P {
    toks: Vec<Token>,
    pos: usize,
}

impl P {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, tok: &Token, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: tok.line,
            col: tok.col,
            message: format!("{}, found {}", msg.into(), tok.kind),
        })
    }

    fn expect_punct(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.bump();
        if t.kind == TokKind::Punct(c) {
            Ok(())
        } else {
            self.err(&t, format!("expected {c:?}"))
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Token), ParseError> {
        let t = self.bump();
        match &t.kind {
            TokKind::Ident(s) => Ok((s.clone(), t.clone())),
            _ => self.err(&t, "expected an identifier"),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let t = self.bump();
        match &t.kind {
            TokKind::Ident(s) if s == kw => Ok(()),
            _ => self.err(&t, format!("expected keyword {kw:?}")),
        }
    }

    fn ident_list(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = vec![self.expect_ident()?.0];
        while self.peek().kind == TokKind::Punct(',') {
            self.bump();
            out.push(self.expect_ident()?.0);
        }
        Ok(out)
    }
}

// Polynomial sub-grammar, position-aware.
struct PolyParser<'a> {
    p: &'a mut P,
    ring: &'a Arc<VarSet>,
}

impl<'a> PolyParser<'a> {
    fn expr(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = match &self.p.peek().kind {
            TokKind::Punct('-') => {
                self.p.bump();
                self.term()?.neg()
            }
            TokKind::Punct('+') => {
                self.p.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match &self.p.peek().kind {
                TokKind::Punct('+') => {
                    self.p.bump();
                    acc = acc.add(&self.term()?);
                }
                TokKind::Punct('-') => {
                    self.p.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = self.power()?;
        while self.p.peek().kind == TokKind::Punct('*') {
            self.p.bump();
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<QPoly, ParseError> {
        let base = self.atom()?;
        if self.p.peek().kind == TokKind::Punct('^') {
            self.p.bump();
            let t = self.p.bump();
            match &t.kind {
                TokKind::Int(n) => {
                    let e: u32 = n.parse().map_err(|_| ParseError {
                        line: t.line,
                        col: t.col,
                        message: format!("exponent {n} out of range"),
                    })?;
                    if e == 0 {
                        return Ok(Poly::constant(self.ring, Rational::one()));
                    }
                    Ok(base.pow(e))
                }
                _ => self.p.err(&t, "expected an integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<QPoly, ParseError> {
        let t = self.p.bump();
        match &t.kind {
            TokKind::Punct('-') => Ok(self.atom()?.neg()),
            TokKind::Int(n) => {
                let numer: Rational = n.parse().map_err(|e| ParseError {
                    line: t.line,
                    col: t.col,
                    message: format!("bad integer: {e}"),
                })?;
                if self.p.peek().kind == TokKind::Punct('/') {
                    self.p.bump();
                    let d = self.p.bump();
                    match &d.kind {
                        TokKind::Int(ds) => {
                            let denom: Rational = ds.parse().map_err(|e| ParseError {
                                line: d.line,
                                col: d.col,
                                message: format!("bad integer: {e}"),
                            })?;
                            if denom.is_zero() {
                                return Err(ParseError {
                                    line: d.line,
                                    col: d.col,
                                    message: "zero denominator".into(),
                                });
                            }
                            Ok(Poly::constant(self.ring, numer / denom))
                        }
                        _ => self.p.err(&d, "expected a denominator"),
                    }
                } else {
                    Ok(Poly::constant(self.ring, numer))
                }
            }
            TokKind::Ident(name) => match self.ring.index_of(name) {
                Some(idx) => Ok(Poly::var(self.ring, idx, Rational::one())),
                None => self.p.err(&t, format!("unknown variable {name:?}")),
            },
            TokKind::Punct('(') => {
                let inner = self.expr()?;
                let close = self.p.bump();
                if close.kind == TokKind::Punct(')') {
                    Ok(inner)
                } else {
                    self.p.err(&close, "expected ')'")
                }
            }
            _ => self.p.err(&t, "expected a polynomial atom"),
        }
    }
}

fn parse_expr(p: &mut P, ring: &Arc<VarSet>, known: &[String]) -> Result<ExprAst, ParseError> {
    let t = p.bump();
    match &t.kind {
        TokKind::Ident(kw) if kw == "ideal" => {
            p.expect_punct('(')?;
            let mut polys = Vec::new();
            loop {
                let start = p.peek().clone();
                let poly = PolyParser { p, ring }.expr()?;
                if poly.is_zero() {
                    return Err(ParseError {
                        line: start.line,
                        col: start.col,
                        message: "zero polynomial cannot generate an ideal".into(),
                    });
                }
                polys.push(poly);
                let sep = p.bump();
                match sep.kind {
                    TokKind::Punct(',') => continue,
                    TokKind::Punct(')') => break,
                    _ => return p.err(&sep, "expected ',' or ')'"),
                }
            }
            Ok(ExprAst::Ideal(polys))
        }
        TokKind::Ident(kw) if kw == "intersect" => {
            p.expect_punct('(')?;
            let mut exprs = Vec::new();
            loop {
                exprs.push(parse_expr(p, ring, known)?);
                let sep = p.bump();
                match sep.kind {
                    TokKind::Punct(',') => continue,
                    TokKind::Punct(')') => break,
                    _ => return p.err(&sep, "expected ',' or ')'"),
                }
            }
            if exprs.is_empty() {
                return p.err(&t, "empty intersection");
            }
            Ok(ExprAst::Intersect(exprs))
        }
        TokKind::Ident(name) => {
            if known.contains(name) {
                Ok(ExprAst::Ref(name.clone()))
            } else {
                p.err(&t, format!("reference to unknown binding {name:?}"))
            }
        }
        _ => p.err(&t, "expected 'ideal', 'intersect' or a binding name"),
    }
}

/// Parse a full document.
pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let toks = lex(text)?;
    let mut p = P { toks, pos: 0 };

    p.expect_keyword("ring")?;
    let plane_list = p.ident_list()?;
    if plane_list.len() != 2 {
        let t = p.peek().clone();
        return Err(ParseError {
            line: t.line,
            col: t.col,
            message: format!(
                "exactly two plane variables expected, found {}",
                plane_list.len()
            ),
        });
    }
    p.expect_punct(';')?;

    let mut params = Vec::new();
    if let TokKind::Ident(kw) = &p.peek().kind {
        if kw == "params" {
            p.bump();
            params = p.ident_list()?;
            p.expect_punct(';')?;
        }
    }
    let mut all = plane_list.clone();
    all.extend(params.iter().cloned());
    for (i, n) in all.iter().enumerate() {
        if all[..i].contains(n) {
            let t = p.peek().clone();
            return Err(ParseError {
                line: t.line,
                col: t.col,
                message: format!("duplicate variable name {n:?}"),
            });
        }
    }
    let ring = VarSet::new(all);

    let mut bindings: Vec<(String, ExprAst)> = Vec::new();
    let target;
    loop {
        let t = p.bump();
        match &t.kind {
            TokKind::Ident(kw) if kw == "analyze" => {
                let (name, tok) = p.expect_ident()?;
                if !bindings.iter().any(|(n, _)| *n == name) {
                    return p.err(&tok, format!("analyze of unknown binding {name:?}"));
                }
                p.expect_punct(';')?;
                target = name;
                break;
            }
            TokKind::Ident(name) => {
                if bindings.iter().any(|(n, _)| n == name) {
                    return p.err(&t, format!("binding {name:?} defined twice"));
                }
                if name == "ideal" || name == "intersect" || name == "ring" || name == "params" {
                    return p.err(&t, format!("{name:?} is a reserved word"));
                }
                p.expect_punct('=')?;
                let known: Vec<String> = bindings.iter().map(|(n, _)| n.clone()).collect();
                let expr = parse_expr(&mut p, &ring, &known)?;
                p.expect_punct(';')?;
                bindings.push((name.clone(), expr));
            }
            TokKind::Eof => {
                return p.err(&t, "expected a binding or 'analyze'");
            }
            _ => return p.err(&t, "expected a binding name or 'analyze'"),
        }
    }
    let t = p.bump();
    if t.kind != TokKind::Eof {
        return p.err(&t, "expected end of input after 'analyze'");
    }

    Ok(Document {
        plane: [plane_list[0].clone(), plane_list[1].clone()],
        params,
        bindings,
        target,
        ring,
    })
}

fn pretty_expr(e: &ExprAst, out: &mut String) {
    match e {
        ExprAst::Ideal(polys) => {
            out.push_str("ideal(");
            for (i, p) in polys.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&p.to_string());
            }
            out.push(')');
        }
        ExprAst::Intersect(exprs) => {
            out.push_str("intersect(");
            for (i, e2) in exprs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                pretty_expr(e2, out);
            }
            out.push(')');
        }
        ExprAst::Ref(n) => out.push_str(n),
    }
}

/// Canonical re-rendering; parsing it back yields an identical document.
pub fn pretty(doc: &Document) -> String {
    let mut out = String::new();
    out.push_str(&format!("ring {}, {};\n", doc.plane[0], doc.plane[1]));
    if !doc.params.is_empty() {
        out.push_str(&format!("params {};\n", doc.params.join(", ")));
    }
    for (name, expr) in &doc.bindings {
        out.push_str(name);
        out.push_str(" = ");
        pretty_expr(expr, &mut out);
        out.push_str(";\n");
    }
    out.push_str(&format!("analyze {};\n", doc.target));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE1: &str = "ring x,y; I = intersect(ideal(x^2-y^3), ideal(y), ideal(x, y^5)); analyze I;";
    const EXAMPLE2: &str = "ring x,y; params u,v; I = intersect(ideal(x^2-y^3+u*y^2), ideal(y-u), ideal(x-v, y)); analyze I;";

    #[test]
    fn parses_the_worked_documents() {
        let d1 = parse_document(EXAMPLE1).unwrap();
        assert_eq!(d1.plane, ["x".to_string(), "y".to_string()]);
        assert!(d1.params.is_empty());
        assert_eq!(d1.target, "I");
        let d2 = parse_document(EXAMPLE2).unwrap();
        assert_eq!(d2.params, vec!["u".to_string(), "v".to_string()]);
    }

    #[test]
    fn zero_ideal_is_rejected() {
        let r = parse_document("ring x,y; I = ideal(0); analyze I;");
        let e = r.unwrap_err();
        assert!(e.message.contains("zero polynomial"), "{e}");
    }

    #[test]
    fn unknown_variable_is_located() {
        let r = parse_document("ring x,y;\nI = ideal(x + z);\nanalyze I;");
        let e = r.unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("unknown variable"), "{e}");
    }

    #[test]
    fn round_trip_is_identity() {
        for src in [EXAMPLE1, EXAMPLE2] {
            let d = parse_document(src).unwrap();
            let printed = pretty(&d);
            let d2 = parse_document(&printed).unwrap();
            assert_eq!(d, d2);
            // And pretty is a fixed point.
            assert_eq!(printed, pretty(&d2));
        }
    }

    #[test]
    fn binding_references() {
        let src = "ring x,y; C = ideal(x^2-y^3); L = ideal(y); I = intersect(C, L); analyze I;";
        let d = parse_document(src).unwrap();
        assert_eq!(d.bindings.len(), 3);
        assert!(matches!(&d.bindings[2].1, ExprAst::Intersect(v) if v.len() == 2));
        // Forward references are rejected.
        assert!(parse_document("ring x,y; I = intersect(C); C = ideal(x); analyze I;").is_err());
    }

    #[test]
    fn comments_and_whitespace() {
        let src = "# heading\nring x, y;  # plane\nI = ideal(x); # gen\nanalyze I;\n";
        assert!(parse_document(src).is_ok());
    }
}
