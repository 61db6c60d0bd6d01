//! Profile expressions in one variable `u` with second-order forward-mode
//! derivatives.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?
//! atom    := number | 'u' | name | func '(' sum ')' | '(' sum ')'
//! ```
//!
//! `^` is right associative and its exponent may not mention `u`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Named constants available to an expression at evaluation time.
pub type Env = BTreeMap<String, f64>;

/// Value and first two derivatives of a scalar function of `u`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet2 {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet2 {
    pub const fn new(v: f64, d1: f64, d2: f64) -> Self {
        Jet2 { v, d1, d2 }
    }

    pub const fn constant(v: f64) -> Self {
        Jet2 { v, d1: 0.0, d2: 0.0 }
    }

    pub const fn variable(u: f64) -> Self {
        Jet2 { v: u, d1: 1.0, d2: 0.0 }
    }

    /// Jet of the derivative. Only value and first derivative are known; the
    /// second slot is NaN so misuse shows up immediately.
    pub fn derivative(self) -> Self {
        Jet2 { v: self.d1, d1: self.d2, d2: f64::NAN }
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite()
    }

    /// `f(self)` given `f`, `f'` and `f''` at `self.v`.
    pub fn chain(self, f: f64, df: f64, ddf: f64) -> Self {
        let d2 = if ddf == 0.0 { df * self.d2 } else { ddf * self.d1 * self.d1 + df * self.d2 };
        Jet2 { v: f, d1: df * self.d1, d2 }
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    pub fn sqrt(self) -> Self {
        if self.v == 0.0 && self.d1 == 0.0 && self.d2 == 0.0 {
            return Jet2::constant(0.0);
        }
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.v))
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.v.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn sinh(self) -> Self {
        self.chain(self.v.sinh(), self.v.cosh(), self.v.sinh())
    }

    pub fn cosh(self) -> Self {
        self.chain(self.v.cosh(), self.v.sinh(), self.v.cosh())
    }

    pub fn atan(self) -> Self {
        let q = 1.0 / (1.0 + self.v * self.v);
        self.chain(self.v.atan(), q, -2.0 * self.v * q * q)
    }

    pub fn asinh(self) -> Self {
        let q = 1.0 / (1.0 + self.v * self.v).sqrt();
        self.chain(self.v.asinh(), q, -self.v * q * q * q)
    }

    pub fn asin(self) -> Self {
        let q = 1.0 / (1.0 - self.v * self.v).sqrt();
        self.chain(self.v.asin(), q, self.v * q * q * q)
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    pub fn ln(self) -> Self {
        let r = 1.0 / self.v;
        self.chain(self.v.ln(), r, -r * r)
    }

    pub fn powf(self, c: f64) -> Self {
        if c == 0.0 {
            return Jet2::constant(1.0);
        }
        if c == 1.0 {
            return self;
        }
        if c == 2.0 {
            return self.sqr();
        }
        let p = |k: f64| -> f64 {
            if k.fract() == 0.0 && k.abs() < 64.0 {
                self.v.powi(k as i32)
            } else {
                self.v.powf(k)
            }
        };
        let ddf = if c == 1.0 { 0.0 } else { c * (c - 1.0) * p(c - 2.0) };
        self.chain(p(c), c * p(c - 1.0), ddf)
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        )
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, o: Jet2) -> Jet2 {
        let q = self.v / o.v;
        let d1 = (self.d1 - q * o.d1) / o.v;
        let d2 = (self.d2 - 2.0 * d1 * o.d1 - q * o.d2) / o.v;
        Jet2::new(q, d1, d2)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2::new(-self.v, -self.d1, -self.d2)
    }
}

impl Add<f64> for Jet2 {
    type Output = Jet2;
    fn add(self, c: f64) -> Jet2 {
        Jet2::new(self.v + c, self.d1, self.d2)
    }
}

impl Sub<f64> for Jet2 {
    type Output = Jet2;
    fn sub(self, c: f64) -> Jet2 {
        Jet2::new(self.v - c, self.d1, self.d2)
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, c: f64) -> Jet2 {
        Jet2::new(self.v * c, self.d1 * c, self.d2 * c)
    }
}

impl Mul<Jet2> for f64 {
    type Output = Jet2;
    fn mul(self, j: Jet2) -> Jet2 {
        j * self
    }
}

impl Div<f64> for Jet2 {
    type Output = Jet2;
    fn div(self, c: f64) -> Jet2 {
        Jet2::new(self.v / c, self.d1 / c, self.d2 / c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tan,
    Atan,
    Asinh,
    Asin,
    Sqrt,
    Exp,
    Log,
}

impl Func {
    pub const ALL: [Func; 11] = [
        Func::Sin,
        Func::Cos,
        Func::Sinh,
        Func::Cosh,
        Func::Tan,
        Func::Atan,
        Func::Asinh,
        Func::Asin,
        Func::Sqrt,
        Func::Exp,
        Func::Log,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tan => "tan",
            Func::Atan => "atan",
            Func::Asinh => "asinh",
            Func::Asin => "asin",
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
            Func::Log => "log",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Const(String),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) => write!(f, "{x:?}"),
            Expr::Var => f.write_str("u"),
            Expr::Const(n) => f.write_str(n),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Bin(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Pow(a, b) => write!(f, "({a}^{b})"),
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

fn builtin(name: &str) -> Option<f64> {
    match name {
        "pi" => Some(std::f64::consts::PI),
        "e" => Some(std::f64::consts::E),
        _ => None,
    }
}

impl Expr {
    pub fn mentions_u(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Const(_) => false,
            Expr::Var => true,
            Expr::Neg(e) | Expr::Call(_, e) => e.mentions_u(),
            Expr::Bin(_, a, b) | Expr::Pow(a, b) => a.mentions_u() || b.mentions_u(),
        }
    }

    /// Names of the constants referenced, in first-seen order.
    pub fn constants(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Const(n) => {
                    if !out.contains(n) {
                        out.push(n.clone());
                    }
                }
                Expr::Num(_) | Expr::Var => {}
                Expr::Neg(e) | Expr::Call(_, e) => walk(e, out),
                Expr::Bin(_, a, b) | Expr::Pow(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Fails with `UnknownConstant` for the first name `env` cannot resolve.
    pub fn check_constants(&self, env: &Env) -> Result<()> {
        for name in self.constants() {
            if !env.contains_key(&name) && builtin(&name).is_none() {
                return Err(Error::UnknownConstant { name });
            }
        }
        Ok(())
    }

    pub fn eval(&self, u: f64, env: &Env) -> Result<f64> {
        self.eval_jet(u, env).map(|j| j.v)
    }

    pub fn eval_jet(&self, u: f64, env: &Env) -> Result<Jet2> {
        let dom = |msg: &str| Error::Domain { expr: self.to_string(), u, message: msg.to_string() };
        let j = match self {
            Expr::Num(x) => Jet2::constant(*x),
            Expr::Var => Jet2::variable(u),
            Expr::Const(n) => match env.get(n).copied().or_else(|| builtin(n)) {
                Some(c) => Jet2::constant(c),
                None => return Err(Error::UnknownConstant { name: n.clone() }),
            },
            Expr::Neg(e) => -e.eval_jet(u, env)?,
            Expr::Bin(op, a, b) => {
                let a = a.eval_jet(u, env)?;
                let b = b.eval_jet(u, env)?;
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b.v == 0.0 {
                            return Err(dom("division by zero"));
                        }
                        a / b
                    }
                }
            }
            Expr::Pow(a, b) => {
                let base = a.eval_jet(u, env)?;
                let c = b.eval_jet(u, env)?.v;
                if base.v < 0.0 && c.fract() != 0.0 {
                    return Err(dom("negative base with non-integer exponent"));
                }
                if base.v == 0.0 && c < 0.0 {
                    return Err(dom("zero base with negative exponent"));
                }
                base.powf(c)
            }
            Expr::Call(func, e) => {
                let x = e.eval_jet(u, env)?;
                match func {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                    Func::Tan => {
                        if x.v.cos() == 0.0 {
                            return Err(dom("tan pole"));
                        }
                        x.tan()
                    }
                    Func::Atan => x.atan(),
                    Func::Asinh => x.asinh(),
                    Func::Asin => {
                        if x.v.abs() > 1.0 || (x.v.abs() == 1.0 && (x.d1 != 0.0 || x.d2 != 0.0)) {
                            return Err(dom("asin argument outside (-1, 1)"));
                        }
                        x.asin()
                    }
                    Func::Sqrt => {
                        if x.v < 0.0 {
                            return Err(dom("sqrt of a negative number"));
                        }
                        if x.v == 0.0 && (x.d1 != 0.0 || x.d2 != 0.0) {
                            return Err(dom("sqrt is not differentiable at 0"));
                        }
                        x.sqrt()
                    }
                    Func::Exp => x.exp(),
                    Func::Log => {
                        if x.v <= 0.0 {
                            return Err(dom("log of a non-positive number"));
                        }
                        x.ln()
                    }
                }
            }
        };
        if !j.is_finite() {
            return Err(dom("non-finite result"));
        }
        Ok(j)
    }
}

impl std::str::FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Expr> {
        parse(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Next token and its byte offset.
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || c == '.' {
            let b = rest.as_bytes();
            let mut i = 0;
            while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'.') {
                i += 1;
            }
            if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
                let mut j = i + 1;
                if j < b.len() && (b[j] == b'+' || b[j] == b'-') {
                    j += 1;
                }
                if j < b.len() && b[j].is_ascii_digit() {
                    while j < b.len() && b[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &rest[..i];
            let x: f64 = text.parse().map_err(|_| Error::Syntax {
                offset: start,
                message: format!("malformed number `{text}`"),
            })?;
            self.pos += i;
            return Ok((Tok::Num(x), start));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let n = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            self.pos += n;
            return Ok((Tok::Ident(rest[..n].to_string()), start));
        }
        if "+-*/^()".contains(c) {
            self.pos += 1;
            return Ok((Tok::Sym(c), start));
        }
        Err(Error::Syntax { offset: start, message: format!("unexpected character `{c}`") })
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<()> {
        let (t, at) = self.lex.next()?;
        self.tok = t;
        self.at = at;
        Ok(())
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.at, message: message.into() })
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.tok {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.product()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.tok {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.tok == Tok::Sym('-') {
            self.bump()?;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.tok != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump()?;
        let at = self.at;
        let exp = self.unary()?;
        if exp.mentions_u() {
            return Err(Error::Syntax { offset: at, message: "exponent must not depend on u".into() });
        }
        Ok(Expr::Pow(Box::new(base), Box::new(exp)))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.tok.clone() {
            Tok::Num(x) => {
                self.bump()?;
                Ok(Expr::Num(x))
            }
            Tok::Sym('(') => {
                self.bump()?;
                let e = self.sum()?;
                self.expect_close()?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.at;
                self.bump()?;
                if self.tok == Tok::Sym('(') {
                    let Some(func) = Func::from_name(&name) else {
                        return Err(Error::Syntax { offset: at, message: format!("unknown function `{name}`") });
                    };
                    self.bump()?;
                    let arg = self.sum()?;
                    self.expect_close()?;
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                if Func::from_name(&name).is_some() {
                    return Err(Error::Syntax { offset: at, message: format!("function `{name}` needs an argument") });
                }
                if name == "u" {
                    Ok(Expr::Var)
                } else {
                    Ok(Expr::Const(name))
                }
            }
            Tok::Sym(c) => self.err(format!("unexpected `{c}`")),
            Tok::End => self.err("unexpected end of input"),
        }
    }

    fn expect_close(&mut self) -> Result<()> {
        if self.tok != Tok::Sym(')') {
            return self.err("expected `)`");
        }
        self.bump()
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { lex: Lexer { src, pos: 0 }, tok: Tok::End, at: 0 };
    p.bump()?;
    let e = p.sum()?;
    if p.tok != Tok::End {
        return p.err("trailing input");
    }
    Ok(e)
}
