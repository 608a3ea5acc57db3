//! Line-oriented polynomial file format.
//!
//! ```text
//! # comment
//! field: GF(7)
//! vars: x1 x2 x3
//! x1^2*x2 - 3/2*x1 + 1
//! ```
//!
//! One polynomial per line. A coefficient of 1 and an exponent of 1 may be
//! omitted. The `field:` header defaults to `Q`; `vars:` is required before
//! the first polynomial. An optional `order:` header records the term order
//! a basis file was written under.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use super::field::{Field, FieldError, FieldTag, Gf, PrimeModulus, Rational};
use super::monomial::{Monomial, OrderError, OrderKind, TermOrder};
use super::poly::{PolyError, Polynomial, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown variable `{name}`")]
    UnknownVariable { line: usize, name: String },
    #[error("missing `vars:` header before the first polynomial")]
    MissingVars,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(s: &str, line: usize) -> Result<Vec<Tok>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("digits")));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(ParseError::Syntax { line, msg: format!("unexpected character `{other}`") }),
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Arc<Ring<F>>,
    line: usize,
}

impl<F: Field> Parser<'_, F> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, msg: msg.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn polynomial(&mut self) -> Result<Polynomial<F>, ParseError> {
        if self.toks.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let mut acc = Polynomial::zero(self.ring);
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                Some(t) => return Err(self.err(format!("expected `+` or `-`, found {t:?}"))),
                None => unreachable!(),
            };
            first = false;
            let (c, m) = self.term()?;
            let c = if negative { -c } else { c };
            acc.add_term(m, c);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<(F, Monomial), ParseError> {
        let mut coeff = self.ring.one_el();
        let mut pairs = Vec::new();
        loop {
            match self.next() {
                Some(Tok::Num(n)) => {
                    let den = if self.peek() == Some(&Tok::Slash) {
                        self.pos += 1;
                        match self.next() {
                            Some(Tok::Num(d)) => d,
                            _ => return Err(self.err("expected denominator after `/`")),
                        }
                    } else {
                        BigInt::from(1)
                    };
                    let v = F::from_ratio(self.ring.ctx(), &n, &den)
                        .ok_or_else(|| ParseError::Field(FieldError::ZeroDenominator(self.ring.field_tag())))?;
                    coeff = coeff.mul_ref(&v);
                }
                Some(Tok::Ident(name)) => {
                    let idx = self
                        .ring
                        .var_index(&name)
                        .ok_or_else(|| ParseError::UnknownVariable { line: self.line, name: name.clone() })?;
                    let exp = if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        match self.next() {
                            Some(Tok::Num(e)) => u32::try_from(e).map_err(|_| self.err("exponent too large"))?,
                            _ => return Err(self.err("expected exponent after `^`")),
                        }
                    } else {
                        1
                    };
                    pairs.push((idx, exp));
                }
                other => return Err(self.err(format!("expected coefficient or variable, found {other:?}"))),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, Monomial::from_pairs(pairs)))
    }
}

fn parse_line<F: Field>(ring: &Arc<Ring<F>>, s: &str, line: usize) -> Result<Polynomial<F>, ParseError> {
    let toks = tokenize(s, line)?;
    let mut p = Parser { toks, pos: 0, ring, line };
    p.polynomial()
}

/// Parses a single polynomial over `ring`.
pub fn parse_polynomial<F: Field>(ring: &Arc<Ring<F>>, s: &str) -> Result<Polynomial<F>, ParseError> {
    parse_line(ring, s, 1)
}

/// A list of polynomials over one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem<F: Field> {
    pub ring: Arc<Ring<F>>,
    pub polys: Vec<Polynomial<F>>,
    /// Term order named in the file header, if any.
    pub order: Option<OrderKind>,
}

impl<F: Field> PolySystem<F> {
    pub fn new(ring: Arc<Ring<F>>, polys: Vec<Polynomial<F>>) -> Self {
        PolySystem { ring, polys, order: None }
    }
}

/// A parsed polynomial file whose field was chosen by its header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnySystem {
    Rational(PolySystem<Rational>),
    Prime(PolySystem<Gf>),
}

impl AnySystem {
    pub fn field_tag(&self) -> FieldTag {
        match self {
            AnySystem::Rational(s) => s.ring.field_tag(),
            AnySystem::Prime(s) => s.ring.field_tag(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnySystem::Rational(s) => s.polys.len(),
            AnySystem::Prime(s) => s.polys.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

struct Header {
    field: FieldTag,
    vars: Option<Vec<String>>,
    order: Option<OrderKind>,
    body: Vec<(usize, String)>,
}

fn split_header(text: &str) -> Result<Header, ParseError> {
    let mut h = Header { field: FieldTag::Rationals, vars: None, order: None, body: Vec::new() };
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("field:") {
            if !h.body.is_empty() {
                return Err(ParseError::Syntax { line, msg: "`field:` header after polynomials".into() });
            }
            h.field = rest.trim().parse()?;
        } else if let Some(rest) = content.strip_prefix("vars:") {
            if !h.body.is_empty() {
                return Err(ParseError::Syntax { line, msg: "`vars:` header after polynomials".into() });
            }
            h.vars = Some(rest.split_whitespace().map(str::to_string).collect());
        } else if let Some(rest) = content.strip_prefix("order:") {
            h.order = Some(rest.trim().parse()?);
        } else {
            if h.vars.is_none() {
                return Err(ParseError::MissingVars);
            }
            h.body.push((line, content.to_string()));
        }
    }
    Ok(h)
}

fn build<F: Field>(h: Header, ctx: F::Ctx) -> Result<PolySystem<F>, ParseError> {
    let ring = Ring::new(h.vars.ok_or(ParseError::MissingVars)?, ctx)?;
    let polys = h.body.iter().map(|(line, s)| parse_line(&ring, s, *line)).collect::<Result<_, _>>()?;
    Ok(PolySystem { ring, polys, order: h.order })
}

pub fn parse_system(text: &str) -> Result<AnySystem, ParseError> {
    let h = split_header(text)?;
    match h.field {
        FieldTag::Rationals => Ok(AnySystem::Rational(build(h, ())?)),
        FieldTag::PrimeField(p) => Ok(AnySystem::Prime(build(h, PrimeModulus::new(p)?)?)),
    }
}

/// Parses a file into a known ring. The file's `vars:` header, if present,
/// must match the ring's universe.
pub fn parse_system_in<F: Field>(ring: &Arc<Ring<F>>, text: &str) -> Result<PolySystem<F>, ParseError> {
    let h = split_header(text)?;
    if h.field != ring.field_tag() {
        return Err(ParseError::Syntax {
            line: 0,
            msg: format!("file is over {} but {} was expected", h.field, ring.field_tag()),
        });
    }
    if let Some(v) = &h.vars {
        if v.as_slice() != ring.var_names() {
            return Err(ParseError::Syntax {
                line: 0,
                msg: "variable header does not match the expected universe".into(),
            });
        }
    }
    let polys = h.body.iter().map(|(line, s)| parse_line(ring, s, *line)).collect::<Result<_, _>>()?;
    Ok(PolySystem { ring: ring.clone(), polys, order: h.order })
}

/// Writes a system in the file format, terms sorted by `order`.
pub fn write_system<F: Field>(
    ring: &Ring<F>,
    polys: &[Polynomial<F>],
    order: &TermOrder,
    record_order: bool,
) -> String {
    let mut out = String::new();
    writeln!(out, "field: {}", ring.field_tag()).unwrap();
    writeln!(out, "vars: {}", ring.var_names().join(" ")).unwrap();
    if record_order {
        writeln!(out, "order: {}", order.kind()).unwrap();
    }
    for p in polys {
        writeln!(out, "{}", p.display_with(order)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_header_and_terms() {
        let text = "# demo\nfield: Q\nvars: x1 x2 x3\nx3^2*x1 - 3/2*x2 + 1  # trailing\n\n2*x1*x1\n";
        let AnySystem::Rational(sys) = parse_system(text).unwrap() else {
            panic!("expected Q");
        };
        assert_eq!(sys.polys.len(), 2);
        let lex = TermOrder::lex(3);
        assert_eq!(sys.polys[0].display_with(&lex).to_string(), "x1*x3^2 - 3/2*x2 + 1");
        assert_eq!(sys.polys[1].display_with(&lex).to_string(), "2*x1^2");
    }

    #[test]
    fn prime_field_header() {
        let sys = parse_system("field: GF(5)\nvars: x\n-x + 1/2\n").unwrap();
        let AnySystem::Prime(s) = sys else { panic!() };
        assert_eq!(s.polys[0].display_with(&TermOrder::lex(1)).to_string(), "4*x + 3");
    }

    #[test]
    fn errors_are_reported_with_lines() {
        assert_eq!(parse_system("x + 1\n"), Err(ParseError::MissingVars));
        assert!(matches!(parse_system("vars: x\ny + 1\n"), Err(ParseError::UnknownVariable { line: 2, .. })));
        assert!(matches!(parse_system("vars: x\nx + + 1\n"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(parse_system("field: GF(4)\nvars: x\nx\n").is_err());
        assert!(parse_system("vars: x\n1/0\n").is_err());
    }

    #[test]
    fn zero_line_is_zero_polynomial() {
        let AnySystem::Rational(s) = parse_system("vars: x\n0\nx - x\n").unwrap() else { panic!() };
        assert!(s.polys.iter().all(Polynomial::is_zero));
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(
            coeffs in proptest::collection::vec((-20i64..20, 1i64..6, proptest::collection::vec(0u32..3, 3)), 0..6)
        ) {
            let ring = Ring::<Rational>::numbered("x", 3, ());
            let p = Polynomial::from_terms(&ring, coeffs.into_iter().map(|(n, d, e)| {
                (Monomial::from_dense(&e), Rational::new(n.into(), d.into()))
            })).unwrap();
            let order = TermOrder::grevlex(3);
            let text = write_system(&ring, std::slice::from_ref(&p), &order, true);
            let AnySystem::Rational(back) = parse_system(&text).unwrap() else { panic!() };
            prop_assert_eq!(back.order, Some(OrderKind::GradedRevLex));
            prop_assert_eq!(&back.polys[0], &p);
        }
    }
}
