//! Words over named matrices.
//!
//! Grammar: a word is a product of factors separated by spaces or `*`.
//! A factor is an identifier, `(w)`, or a commutator `[u,v]`, followed by
//! any number of postfix operators: `^n` (integer, possibly negative),
//! `^k` (the loop variable), `^{w}` (conjugation `w^-1 u w`) and `'`
//! (transpose). Identifiers do not split, so `xy` must be written `x y`.
//!
//! ```
//! use sympgen::claims::word::{Scope, Word};
//! use sympgen::gf::Field;
//! use sympgen::matrix::Mat;
//! let k = Field::prime(5).unwrap();
//! let x = Mat::from_ints(&k, &[vec![0, 1], vec![1, 0]]);
//! let y = Mat::from_ints(&k, &[vec![0, -1], vec![1, -1]]);
//! let scope = Scope::new().with("x", x.clone()).with("y", y.clone());
//! let w = Word::parse("(x y)^k y").unwrap();
//! let g = scope.eval_at(&w, 3).unwrap();
//! assert_eq!(g, &(&x * &y).pow_u128(3) * &y);
//! ```

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::matrix::{Mat, MatError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("parse error at {pos} in {src:?}: {msg}")]
    Parse {
        src: String,
        pos: usize,
        msg: String,
    },
    #[error("unknown matrix {0}")]
    Unknown(String),
    #[error("word uses k outside a loop")]
    NoLoopVariable,
    #[error("empty word")]
    Empty,
    #[error(transparent)]
    Mat(#[from] MatError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exp {
    Int(i64),
    K,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Gen(String),
    Prod(Vec<Word>),
    Pow(Box<Word>, Exp),
    Conj(Box<Word>, Box<Word>),
    Comm(Box<Word>, Box<Word>),
    Transpose(Box<Word>),
}

struct Parser<'a> {
    src: &'a str,
    b: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, WordError> {
        Err(WordError::Parse {
            src: self.src.into(),
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.b.len() && self.b[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.b.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> Result<(), WordError> {
        if self.peek() != Some(c) {
            return self.err(&format!("expected '{}'", c as char));
        }
        self.pos += 1;
        Ok(())
    }

    fn word(&mut self) -> Result<Word, WordError> {
        let mut fs = Vec::new();
        loop {
            match self.peek() {
                Some(b'*') if !fs.is_empty() => {
                    self.pos += 1;
                    fs.push(self.factor()?);
                }
                Some(c) if c == b'(' || c == b'[' || c.is_ascii_alphabetic() => {
                    fs.push(self.factor()?)
                }
                _ => break,
            }
        }
        match fs.len() {
            0 => self.err("expected a factor"),
            1 => Ok(fs.pop().unwrap()),
            _ => Ok(Word::Prod(fs)),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.b.len()
            && (self.b[self.pos].is_ascii_alphanumeric() || self.b[self.pos] == b'_')
        {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    fn int(&mut self) -> Result<i64, WordError> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        while self.pos < self.b.len() && self.b[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        match self.src[start..self.pos].parse::<i64>() {
            Ok(v) => Ok(if neg { -v } else { v }),
            Err(_) => self.err("expected an exponent"),
        }
    }

    fn factor(&mut self) -> Result<Word, WordError> {
        let mut w = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.eat(b')')?;
                w
            }
            Some(b'[') => {
                self.pos += 1;
                let u = self.word()?;
                self.eat(b',')?;
                let v = self.word()?;
                self.eat(b']')?;
                Word::Comm(Box::new(u), Box::new(v))
            }
            Some(c) if c.is_ascii_alphabetic() => Word::Gen(self.ident()),
            _ => return self.err("expected a factor"),
        };
        loop {
            // postfix operators bind tightly: no whitespace before them
            match self.b.get(self.pos) {
                Some(b'\'') => {
                    self.pos += 1;
                    w = Word::Transpose(Box::new(w));
                }
                Some(b'^') => {
                    self.pos += 1;
                    match self.b.get(self.pos) {
                        Some(b'{') => {
                            self.pos += 1;
                            let save = self.pos;
                            let exp = match self.peek() {
                                Some(c) if c == b'-' || c.is_ascii_digit() => {
                                    Some(Exp::Int(self.int()?))
                                }
                                _ => None,
                            };
                            let exp = if exp.is_none() && self.peek() == Some(b'k') {
                                let s = self.pos;
                                self.pos += 1;
                                if self.peek() == Some(b'}') {
                                    Some(Exp::K)
                                } else {
                                    self.pos = s;
                                    None
                                }
                            } else {
                                exp
                            };
                            if let Some(e) = exp {
                                self.eat(b'}')?;
                                w = Word::Pow(Box::new(w), e);
                            } else {
                                self.pos = save;
                                let h = self.word()?;
                                self.eat(b'}')?;
                                w = Word::Conj(Box::new(w), Box::new(h));
                            }
                        }
                        Some(&c) if c == b'-' || c.is_ascii_digit() => {
                            let e = self.int()?;
                            w = Word::Pow(Box::new(w), Exp::Int(e));
                        }
                        Some(b'k') => {
                            self.pos += 1;
                            w = Word::Pow(Box::new(w), Exp::K);
                        }
                        Some(c) if c.is_ascii_alphabetic() => {
                            let h = Word::Gen(self.ident());
                            w = Word::Conj(Box::new(w), Box::new(h));
                        }
                        _ => return self.err("expected an exponent after '^'"),
                    }
                }
                _ => return Ok(w),
            }
        }
    }
}

impl Word {
    pub fn parse(src: &str) -> Result<Word, WordError> {
        let mut p = Parser {
            src,
            b: src.as_bytes(),
            pos: 0,
        };
        if p.peek().is_none() {
            return Err(WordError::Empty);
        }
        let w = p.word()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(w)
    }

    /// Names of the matrices the word refers to.
    pub fn generators(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect(&self, out: &mut Vec<String>) {
        match self {
            Word::Gen(g) => out.push(g.clone()),
            Word::Prod(v) => v.iter().for_each(|w| w.collect(out)),
            Word::Pow(w, _) | Word::Transpose(w) => w.collect(out),
            Word::Conj(a, b) | Word::Comm(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    pub fn uses_k(&self) -> bool {
        match self {
            Word::Gen(_) => false,
            Word::Prod(v) => v.iter().any(|w| w.uses_k()),
            Word::Pow(w, e) => *e == Exp::K || w.uses_k(),
            Word::Transpose(w) => w.uses_k(),
            Word::Conj(a, b) | Word::Comm(a, b) => a.uses_k() || b.uses_k(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn base(f: &mut fmt::Formatter<'_>, w: &Word) -> fmt::Result {
            match w {
                Word::Prod(_) => write!(f, "({w})"),
                _ => write!(f, "{w}"),
            }
        }
        match self {
            Word::Gen(g) => write!(f, "{g}"),
            Word::Prod(v) => {
                for (i, w) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{w}")?;
                }
                Ok(())
            }
            Word::Comm(a, b) => write!(f, "[{a},{b}]"),
            Word::Pow(w, e) => {
                base(f, w)?;
                match e {
                    Exp::Int(n) if *n < 0 => write!(f, "^{{{n}}}"),
                    Exp::Int(n) => write!(f, "^{n}"),
                    Exp::K => write!(f, "^k"),
                }
            }
            Word::Conj(w, h) => {
                base(f, w)?;
                match **h {
                    Word::Gen(_) => write!(f, "^{h}"),
                    _ => write!(f, "^{{{h}}}"),
                }
            }
            Word::Transpose(w) => {
                base(f, w)?;
                write!(f, "'")
            }
        }
    }
}

/// Named matrices a word is evaluated against.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    mats: BTreeMap<String, Mat>,
}

impl Scope {
    pub fn new() -> Scope {
        Scope::default()
    }

    pub fn with(mut self, name: &str, m: Mat) -> Scope {
        self.insert(name, m);
        self
    }

    pub fn insert(&mut self, name: &str, m: Mat) {
        self.mats.insert(name.to_string(), m);
    }

    pub fn get(&self, name: &str) -> Option<&Mat> {
        self.mats.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.mats.keys().map(|k| k.as_str())
    }

    /// Evaluate a word that does not use `k`.
    pub fn eval(&self, w: &Word) -> Result<Mat, WordError> {
        self.go(w, None)
    }

    pub fn eval_at(&self, w: &Word, k: u64) -> Result<Mat, WordError> {
        self.go(w, Some(k))
    }

    /// Parse and evaluate in one step.
    pub fn eval_str(&self, src: &str) -> Result<Mat, WordError> {
        self.eval(&Word::parse(src)?)
    }

    /// Parse `src` and bind the result under `name`.
    pub fn define(&mut self, name: &str, src: &str) -> Result<(), WordError> {
        let m = self.eval_str(src)?;
        self.insert(name, m);
        Ok(())
    }

    fn go(&self, w: &Word, k: Option<u64>) -> Result<Mat, WordError> {
        Ok(match w {
            Word::Gen(g) => self
                .mats
                .get(g)
                .cloned()
                .ok_or_else(|| WordError::Unknown(g.clone()))?,
            Word::Prod(v) => {
                let mut acc = self.go(&v[0], k)?;
                for f in &v[1..] {
                    acc = acc.try_mul(&self.go(f, k)?)?;
                }
                acc
            }
            Word::Pow(b, Exp::Int(e)) => self.go(b, k)?.pow(*e)?,
            Word::Pow(b, Exp::K) => {
                let k = k.ok_or(WordError::NoLoopVariable)?;
                let m = self.go(b, Some(k))?;
                if !m.is_square() {
                    return Err(MatError::NotSquare.into());
                }
                m.pow_u128(k as u128)
            }
            Word::Conj(b, h) => self.go(b, k)?.conj(&self.go(h, k)?)?,
            Word::Comm(u, v) => {
                let u = self.go(u, k)?;
                let v = self.go(v, k)?;
                let ui = u.inverse()?;
                let vi = v.inverse()?;
                ui.try_mul(&vi)?.try_mul(&u)?.try_mul(&v)?
            }
            Word::Transpose(b) => self.go(b, k)?.transpose(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn scope() -> (Scope, Mat, Mat) {
        let k = Field::prime(7).unwrap();
        let x = Mat::from_ints(&k, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]]);
        let y = Mat::from_ints(&k, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 2]]);
        (Scope::new().with("x", x.clone()).with("y", y.clone()), x, y)
    }

    #[test]
    fn parses_postfix_forms() {
        let w = Word::parse("tau^{y^2 x} tau^y'").unwrap();
        assert_eq!(w.generators(), vec!["tau", "x", "y"]);
        assert!(Word::parse("x^").is_err());
        assert!(Word::parse("(x y").is_err());
        assert!(Word::parse("x,y").is_err());
        assert_eq!(Word::parse("  "), Err(WordError::Empty));
        assert!(Word::parse("[x,y]^{-2}").is_ok());
        assert!(Word::parse("x^{k}").unwrap().uses_k());
    }

    #[test]
    fn evaluation_matches_direct_products() {
        let (s, x, y) = scope();
        let yi = y.inverse().unwrap();
        assert_eq!(s.eval_str("x^{y}").unwrap(), &(&yi * &x) * &y);
        assert_eq!(s.eval_str("x^y").unwrap(), &(&yi * &x) * &y);
        let xi = x.inverse().unwrap();
        assert_eq!(s.eval_str("[x,y]").unwrap(), &(&(&xi * &yi) * &x) * &y);
        assert_eq!(s.eval_str("y^-1").unwrap(), yi);
        assert_eq!(s.eval_str("(x y)'").unwrap(), (&x * &y).transpose());
        assert_eq!(s.eval_str("x*y").unwrap(), &x * &y);
        assert!(matches!(s.eval_str("z"), Err(WordError::Unknown(_))));
        assert_eq!(s.eval_str("x^k"), Err(WordError::NoLoopVariable));
        let w = Word::parse("(x y)^k y").unwrap();
        assert_eq!(s.eval_at(&w, 0).unwrap(), y);
    }

    #[test]
    fn display_round_trips() {
        for src in [
            "(x y)^k y",
            "[x,y]^3 x y",
            "tau^{y^2 x} tau^y",
            "x^{-1}",
            "(x y)' y",
        ] {
            let w = Word::parse(src).unwrap();
            assert_eq!(Word::parse(&w.to_string()).unwrap(), w, "{src} -> {w}");
        }
    }
}
