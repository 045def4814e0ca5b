//! Small arithmetic expressions over named variables, evaluated to
//! polynomials in `t` over a finite field.
//!
//! Grammar: sums and differences of products; factors are integers,
//! identifiers, parenthesised expressions, unary minus and `^` with a
//! non-negative integer exponent. Juxtaposition multiplies, so `4a^2`
//! reads as `4*a^2`. Division is allowed only by nonzero constants.
//!
//! ```
//! use sympgen::expr::{Env, Expr};
//! use sympgen::gf::Field;
//! let k = Field::prime(7).unwrap();
//! let env = Env::new(&k).with("a", k.from_int(3));
//! let e = Expr::parse("a^2 - 2a + 1").unwrap();
//! assert_eq!(env.eval_elem(&e).unwrap(), k.from_int(4));
//! ```

use std::collections::BTreeMap;

use thiserror::Error;

use crate::gf::{FieldElem, FieldRef};
use crate::poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error at {pos} in {src:?}: {msg}")]
    Parse {
        src: String,
        pos: usize,
        msg: String,
    },
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("division by a non-constant or zero")]
    BadDivision,
    #[error("expression is not a constant")]
    NotConstant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a str,
    b: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, ExprError> {
        Err(ExprError::Parse {
            src: self.src.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.b.len() && self.b[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.b.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.b.len() && self.b[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected exponent");
            }
            let e: u32 = match self.src[start..self.pos].parse() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            };
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.b.len() && self.b[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                match self.src[start..self.pos].parse() {
                    Ok(v) => Ok(Expr::Int(v)),
                    Err(_) => self.err("integer too large"),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.b.len()
                    && (self.b[self.pos].is_ascii_alphanumeric() || self.b[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                Ok(Expr::Var(self.src[start..self.pos].to_string()))
            }
            _ => self.err("expected a term"),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ExprError> {
        let mut p = Parser {
            src,
            b: src.as_bytes(),
            pos: 0,
        };
        let e = p.sum()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(e)
    }
}

/// Variable bindings for evaluation. `t` is bound to the indeterminate
/// unless overridden.
#[derive(Clone)]
pub struct Env {
    field: FieldRef,
    vars: BTreeMap<String, Poly>,
}

impl Env {
    pub fn new(field: &FieldRef) -> Env {
        let mut vars = BTreeMap::new();
        vars.insert("t".to_string(), Poly::t(field));
        Env {
            field: field.clone(),
            vars,
        }
    }

    pub fn with(mut self, name: &str, v: FieldElem) -> Env {
        self.set(name, v);
        self
    }

    /// Bind `name` to the indeterminate, so expressions in `name` evaluate
    /// to polynomials.
    pub fn with_indeterminate(mut self, name: &str) -> Env {
        self.vars.insert(name.to_string(), Poly::t(&self.field));
        self
    }

    pub fn set(&mut self, name: &str, v: FieldElem) {
        self.vars
            .insert(name.to_string(), Poly::constant(&self.field, v));
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn eval(&self, e: &Expr) -> Result<Poly, ExprError> {
        let k = &self.field;
        Ok(match e {
            Expr::Int(v) => Poly::constant(k, k.from_int(*v)),
            Expr::Var(v) => self
                .vars
                .get(v)
                .cloned()
                .ok_or_else(|| ExprError::Unbound(v.clone()))?,
            Expr::Neg(a) => self.eval(a)?.neg(),
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Expr::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Expr::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?),
            Expr::Div(a, b) => {
                let d = self.eval(b)?;
                if d.degree() != Some(0) {
                    return Err(ExprError::BadDivision);
                }
                let inv = k.inv(d.coeff(0)).map_err(|_| ExprError::BadDivision)?;
                self.eval(a)?.scale(inv)
            }
            Expr::Pow(a, n) => self.eval(a)?.pow(*n as u64),
        })
    }

    /// Evaluate to a field element; fails if the result involves `t`.
    pub fn eval_elem(&self, e: &Expr) -> Result<FieldElem, ExprError> {
        let p = self.eval(e)?;
        match p.degree() {
            None => Ok(self.field.zero()),
            Some(0) => Ok(p.coeff(0)),
            _ => Err(ExprError::NotConstant),
        }
    }

    pub fn eval_str(&self, src: &str) -> Result<Poly, ExprError> {
        self.eval(&Expr::parse(src)?)
    }

    pub fn elem_str(&self, src: &str) -> Result<FieldElem, ExprError> {
        self.eval_elem(&Expr::parse(src)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    #[test]
    fn juxtaposition_and_precedence() {
        let k = Field::prime(11).unwrap();
        let env = Env::new(&k).with("a", k.from_int(2));
        assert_eq!(env.elem_str("4a^2").unwrap(), k.from_int(16));
        assert_eq!(env.elem_str("-a^2").unwrap(), k.from_int(-4));
        assert_eq!(env.elem_str("(a+1)(a-1)").unwrap(), k.from_int(3));
        assert_eq!(
            env.elem_str("3/a").unwrap(),
            k.div(k.from_int(3), k.from_int(2)).unwrap()
        );
    }

    #[test]
    fn polynomial_in_t() {
        let k = Field::prime(5).unwrap();
        let env = Env::new(&k).with("a", k.from_int(1));
        let p = env.eval_str("(t+1)^2 (t^2 + a t + 1)").unwrap();
        assert_eq!(p, Poly::from_ints(&k, &[1, 3, 4, 3, 1]));
    }

    #[test]
    fn errors() {
        let k = Field::prime(5).unwrap();
        let env = Env::new(&k);
        assert!(matches!(env.eval_str("b"), Err(ExprError::Unbound(_))));
        assert_eq!(env.eval_str("1/t"), Err(ExprError::BadDivision));
        assert_eq!(env.eval_str("1/5"), Err(ExprError::BadDivision));
        assert!(Expr::parse("1 +").is_err());
        assert!(Expr::parse("(1").is_err());
    }
}
