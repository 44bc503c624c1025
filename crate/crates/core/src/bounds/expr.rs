//! Exact arithmetic expressions over the variables `g`, `p` and `q`.
//!
//! Grammar: integers, the three variables, `+ - * /`, unary minus and
//! parentheses, with the usual precedence. Juxtaposition is not accepted.

use std::fmt;

use num::{BigInt, Zero};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("cannot parse formula {formula:?} at byte {at}: {reason}")]
    Parse { formula: String, at: usize, reason: String },
    #[error("variable {0} is not bound")]
    Unbound(char),
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Num(BigInt),
    Var(char),
    Neg(Box<Node>),
    Bin(char, Box<Node>, Box<Node>),
}

/// Parsed formula; [`Display`](fmt::Display) gives back the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    source: String,
    root: Node,
}

/// Values for `g`, `p`, `q`; unset variables are errors when used.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Bindings {
    pub g: Option<u64>,
    pub p: Option<u64>,
    pub q: Option<u64>,
}

impl Expr {
    pub fn parse(source: &str) -> Result<Self, ExprError> {
        let mut parser = Parser {
            src: source,
            bytes: source.as_bytes(),
            pos: 0,
        };
        let root = parser.sum()?;
        parser.skip_ws();
        if parser.pos != parser.bytes.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(Expr {
            source: source.trim().to_string(),
            root,
        })
    }

    /// Variables occurring in the formula, sorted and deduplicated.
    pub fn variables(&self) -> Vec<char> {
        fn walk(n: &Node, out: &mut Vec<char>) {
            match n {
                Node::Num(_) => {}
                Node::Var(v) => out.push(*v),
                Node::Neg(a) => walk(a, out),
                Node::Bin(_, a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn eval(&self, env: &Bindings) -> Result<Rational, ExprError> {
        eval(&self.root, env)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn eval(n: &Node, env: &Bindings) -> Result<Rational, ExprError> {
    Ok(match n {
        Node::Num(k) => Rational::from_integer(k.clone()),
        Node::Var(v) => {
            let val = match v {
                'g' => env.g,
                'p' => env.p,
                _ => env.q,
            };
            Rational::from_integer(BigInt::from(val.ok_or(ExprError::Unbound(*v))?))
        }
        Node::Neg(a) => -eval(a, env)?,
        Node::Bin(op, a, b) => {
            let (x, y) = (eval(a, env)?, eval(b, env)?);
            match op {
                '+' => x + y,
                '-' => x - y,
                '*' => x * y,
                _ => {
                    if y.is_zero() {
                        return Err(ExprError::DivisionByZero);
                    }
                    x / y
                }
            }
        }
    })
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> ExprError {
        ExprError::Parse {
            formula: self.src.to_string(),
            at: self.pos,
            reason: reason.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Node, ExprError> {
        let mut acc = self.product()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = Node::Bin(c as char, Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Node, ExprError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = Node::Bin(c as char, Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Node, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Node, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c @ (b'g' | b'p' | b'q')) => {
                self.pos += 1;
                Ok(Node::Var(c as char))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = self.src[start..self.pos].parse().expect("digits");
                Ok(Node::Num(n))
            }
            Some(_) => Err(self.error("expected a number, variable or `(`")),
            None => Err(self.error("unexpected end of formula")),
        }
    }
}
