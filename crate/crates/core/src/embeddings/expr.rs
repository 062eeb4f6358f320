//! Rational expressions in theta constants, e.g.
//! `th[0,0;0,0]^2 / (th[0,(1-i)/2;(1-i)/2,0]^2 + 1)`.

use crate::error::{Error, Result};
use crate::halfspace::Point;
use crate::parse::parse_char;
use crate::scalar::Complex;
use crate::theta::{theta_on_h3_complex, ThetaChar};
use std::collections::HashMap;
use std::fmt;

const SINGULAR: f64 = 1e-300;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Theta(ThetaChar),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("expression {:?}: {what} at offset {}", self.src, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let rest = &self.src[self.pos..];
            let len = rest
                .char_indices()
                .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-'))
                .count();
            let k: i32 = rest[..len].parse().map_err(|_| self.err("expected an integer exponent"))?;
            self.pos += len;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        if self.eat('(') {
            let e = self.expr()?;
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(e);
        }
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if let Some(body) = rest.strip_prefix("th[") {
            let end = body.find(']').ok_or_else(|| self.err("unterminated th["))?;
            let c = parse_char(&body[..end])?;
            self.pos += 3 + end + 1;
            return Ok(Expr::Theta(c));
        }
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| {
                c.is_ascii_digit() || c == '.' || ((c == 'e' || c == 'E') && i > 0)
            })
            .count();
        if len == 0 {
            return Err(self.err("expected a number, th[...] or '('"));
        }
        let v: f64 = rest[..len].parse().map_err(|_| self.err("bad number"))?;
        self.pos += len;
        Ok(Expr::Num(v))
    }
}

impl std::str::FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

impl Expr {
    pub fn thetas(&self, out: &mut Vec<ThetaChar>) {
        match self {
            Expr::Num(_) => {}
            Expr::Theta(c) => {
                if !out.contains(c) {
                    out.push(*c);
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.thetas(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.thetas(out);
                b.thetas(out);
            }
        }
    }

    fn eval_with(&self, vals: &HashMap<ThetaChar, Complex<f64>>) -> Result<Complex<f64>> {
        Ok(match self {
            Expr::Num(v) => Complex::new(*v, 0.0),
            Expr::Theta(c) => vals[c],
            Expr::Neg(a) => -a.eval_with(vals)?,
            Expr::Add(a, b) => a.eval_with(vals)? + b.eval_with(vals)?,
            Expr::Sub(a, b) => a.eval_with(vals)? - b.eval_with(vals)?,
            Expr::Mul(a, b) => a.eval_with(vals)? * b.eval_with(vals)?,
            Expr::Div(a, b) => {
                let d = b.eval_with(vals)?;
                if d.norm() < SINGULAR {
                    return Err(Error::SingularDenominator);
                }
                a.eval_with(vals)? / d
            }
            Expr::Pow(a, k) => {
                let v = a.eval_with(vals)?;
                if *k < 0 && v.norm() < SINGULAR {
                    return Err(Error::SingularDenominator);
                }
                v.powi(*k)
            }
        })
    }

    pub fn eval(&self, p: &Point<f64>, eps: f64) -> Result<Complex<f64>> {
        let mut chars = Vec::new();
        self.thetas(&mut chars);
        let mut vals = HashMap::new();
        for c in chars {
            vals.insert(c, theta_on_h3_complex(&c, p, eps)?);
        }
        self.eval_with(&vals)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Theta(c) => write!(f, "th[{c}]"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
        }
    }
}
