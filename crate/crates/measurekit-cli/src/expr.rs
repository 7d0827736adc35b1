//! Closed-form rational expressions in the sequence index `n`.
//!
//! Grammar: `+ - * /`, unary minus, integer powers with `^` (exponent may
//! itself be `n`, as in `2^n`), parentheses, integer literals, and the
//! variable `n`. Every template evaluates to an exact rational for each n.

use std::fmt;

use measurekit::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number(i64),
    N,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("parse error at byte {0}: {1}")]
    Parse(usize, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent must be an integer, got {0}")]
    NonIntegerExponent(Scalar),
}

impl Expr {
    pub fn parse(input: &str) -> Result<Expr, ExprError> {
        let mut p = Parser { input: input.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.input.len() {
            return Err(ExprError::Parse(p.pos, "unexpected trailing input".into()));
        }
        Ok(e)
    }

    pub fn eval(&self, n: u64) -> Result<Scalar, ExprError> {
        Ok(match self {
            Expr::Number(k) => Scalar::from_int(*k),
            Expr::N => Scalar::from_int(n as i64),
            Expr::Neg(e) => -e.eval(n)?,
            Expr::Add(a, b) => a.eval(n)? + b.eval(n)?,
            Expr::Sub(a, b) => a.eval(n)? - b.eval(n)?,
            Expr::Mul(a, b) => a.eval(n)? * b.eval(n)?,
            Expr::Div(a, b) => {
                let d = b.eval(n)?;
                if d.is_zero() {
                    return Err(ExprError::DivisionByZero);
                }
                a.eval(n)? / d
            }
            Expr::Pow(base, exp) => {
                let e = exp.eval(n)?;
                if !e.is_integer() {
                    return Err(ExprError::NonIntegerExponent(e));
                }
                let k: i64 = e
                    .numer()
                    .to_string()
                    .parse()
                    .map_err(|_| ExprError::NonIntegerExponent(e.clone()))?;
                let b = base.eval(n)?;
                if b.is_zero() && k < 0 {
                    return Err(ExprError::DivisionByZero);
                }
                b.pow(k)
            }
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(k) => write!(f, "{k}"),
            Expr::N => write!(f, "n"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, b) => write!(f, "({a}^{b})"),
        }
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            // right-associative, unary minus allowed in the exponent
            let exp = self.factor()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(ExprError::Parse(self.pos, "expected ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'n') => {
                self.pos += 1;
                Ok(Expr::N)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                let value: i64 = text
                    .parse()
                    .map_err(|_| ExprError::Parse(start, format!("integer out of range: {text}")))?;
                Ok(Expr::Number(value))
            }
            Some(c) => Err(ExprError::Parse(self.pos, format!("unexpected byte '{}'", c as char))),
            None => Err(ExprError::Parse(self.pos, "unexpected end of input".into())),
        }
    }
}
