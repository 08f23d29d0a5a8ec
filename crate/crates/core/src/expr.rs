//! Exact parser for maps, curves and points.
//!
//! Grammar: integer and rational literals, variables, `+ - * / ^`, and
//! parentheses. Exponents are non-negative integer literals.

use crate::arith::poly::Poly;
use crate::arith::upoly::UPoly;
use crate::arith::Rational;
use crate::dynsys::{DynError, P1Point, RationalMap};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero at {pos}")]
    DivisionByZero { pos: usize },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("expected a polynomial")]
    NonPolynomialWhereRequired,
    #[error(transparent)]
    Map(#[from] DynError),
}

/// `num / den`, never reduced.
#[derive(Clone, Debug)]
struct Frac {
    num: Poly,
    den: Poly,
}

impl Frac {
    fn poly(p: Poly) -> Self {
        let den = Poly::one_in(p.vars());
        Frac { num: p, den }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((s, Tok::Num(src[s..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((s, Tok::Var(src[s..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a Arc<Vec<String>>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.term()?;
        loop {
            let sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                return Ok(acc);
            };
            let t = self.term()?;
            let rhs = if sign > 0 { &t.num * &acc.den } else { -&(&t.num * &acc.den) };
            acc = Frac { num: &(&acc.num * &t.den) + &rhs, den: &acc.den * &t.den };
        }
    }

    fn term(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let f = self.unary()?;
                acc = Frac { num: &acc.num * &f.num, den: &acc.den * &f.den };
            } else if self.peek() == Some(&Tok::Op('/')) {
                self.at += 1;
                let pos = self.pos();
                let f = self.unary()?;
                if f.num.is_zero() {
                    return Err(ParseError::DivisionByZero { pos });
                }
                acc = Frac { num: &acc.num * &f.den, den: &acc.den * &f.num };
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Frac, ParseError> {
        if self.eat('-') {
            let f = self.unary()?;
            return Ok(Frac { num: -&f.num, den: f.den });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Frac, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.toks.get(self.at).cloned() {
            Some((_, Tok::Num(n))) => {
                self.at += 1;
                let Ok(e) = u32::try_from(n) else {
                    return self.err("exponent too large");
                };
                Ok(Frac { num: base.num.pow(e), den: base.den.pow(e) })
            }
            _ => self.err("expected a non-negative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Frac, ParseError> {
        let Some((pos, tok)) = self.toks.get(self.at).cloned() else {
            return self.err("unexpected end of input");
        };
        self.at += 1;
        match tok {
            Tok::Num(n) => Ok(Frac::poly(Poly::constant(self.vars, Rational::from_integer(n)))),
            Tok::Var(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Frac::poly(Poly::var(self.vars, i))),
                None => Err(ParseError::UnknownVariable { pos, name }),
            },
            Tok::Op('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Tok::Op(c) => Err(ParseError::Syntax { pos, msg: format!("unexpected `{c}`") }),
        }
    }
}

fn parse_frac(src: &str, vars: &Arc<Vec<String>>) -> Result<Frac, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.len(), vars };
    let f = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// A polynomial in the given variables.
pub fn parse_poly(src: &str, vars: &Arc<Vec<String>>) -> Result<Poly, ParseError> {
    let f = parse_frac(src, vars)?;
    let c = f.den.constant_value().ok_or(ParseError::NonPolynomialWhereRequired)?;
    Ok(f.num.scale(&(Rational::one() / c)))
}

/// A rational function of `t`, in lowest terms.
pub fn parse_map(src: &str) -> Result<RationalMap, ParseError> {
    let vars = Poly::new_vars(&["t"]);
    let f = parse_frac(src, &vars)?;
    let num = f.num.to_upoly(0).unwrap();
    let den = f.den.to_upoly(0).unwrap();
    Ok(RationalMap::from_fraction(&num, &den)?)
}

/// A polynomial in `t`.
pub fn parse_upoly(src: &str) -> Result<UPoly, ParseError> {
    let vars = Poly::new_vars(&["t"]);
    Ok(parse_poly(src, &vars)?.to_upoly(0).unwrap())
}

/// A point of `P^1(Q)`: a rational expression or `inf`.
pub fn parse_point(src: &str) -> Result<P1Point, ParseError> {
    let s = src.trim();
    if s == "inf" || s == "∞" {
        return Ok(P1Point::Infinity);
    }
    let vars = Arc::new(Vec::new());
    let p = parse_poly(s, &vars)?;
    Ok(P1Point::Finite(p.constant_value().unwrap_or_else(Rational::zero)))
}

/// Comma-separated points.
pub fn parse_points(src: &str) -> Result<Vec<P1Point>, ParseError> {
    src.split(',').map(parse_point).collect()
}

/// Comma-separated maps; commas inside parentheses do not split.
pub fn split_top_level(src: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(src[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(src[start..].trim());
    out
}

/// Variable names `x, y` for two coordinates, `x1..xg` otherwise.
pub fn coordinate_vars(g: usize) -> Arc<Vec<String>> {
    match g {
        1 => Poly::new_vars(&["x"]),
        2 => Poly::new_vars(&["x", "y"]),
        _ => Arc::new((1..=g).map(|i| format!("x{i}")).collect()),
    }
}
