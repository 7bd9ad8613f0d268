//! A small expression language for functions of `z` and `conj(z)`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | number 'i' | 'i' | 'z' | 'zbar'
//!          | func '(' expr ')' | '(' expr ')'
//! func    := conj | abs | re | im | exp | sin | cos | log | sqrt
//! ```
//!
//! `^` binds tighter than unary minus and associates to the right.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Complex;
use crate::oracle::Oracle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvalErrorKind {
    DivisionByZero,
    LogOfZero,
    ZeroPower,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("{kind:?} while evaluating at z = {z}")]
pub struct EvalError {
    pub z: Complex,
    pub kind: EvalErrorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Conj,
    Abs,
    Re,
    Im,
    Exp,
    Sin,
    Cos,
    Log,
    Sqrt,
}

impl Func {
    const ALL: [Func; 9] = [
        Func::Conj,
        Func::Abs,
        Func::Re,
        Func::Im,
        Func::Exp,
        Func::Sin,
        Func::Cos,
        Func::Log,
        Func::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Conj => "conj",
            Func::Abs => "abs",
            Func::Re => "re",
            Func::Im => "im",
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Complex),
    Z,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num { value: f64, imaginary: bool },
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num { .. } => "number".into(),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Op(c) => format!("'{c}'"),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let ident_char = |b: u8| b.is_ascii_alphanumeric() || b == b'_';
    while i < bytes.len() {
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        match b {
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let value: f64 = text.parse().map_err(|_| ParseError {
                    offset: start,
                    expected: "number".into(),
                })?;
                let imaginary = i < bytes.len()
                    && bytes[i] == b'i'
                    && !(i + 1 < bytes.len() && ident_char(bytes[i + 1]));
                if imaginary {
                    i += 1;
                }
                out.push((start, Tok::Num { value, imaginary }));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && ident_char(bytes[i]) {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push((start, Tok::Op(b as char)));
                i += 1;
            }
            b'(' => {
                out.push((start, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((start, Tok::RParen));
                i += 1;
            }
            _ => {
                return Err(ParseError {
                    offset: start,
                    expected: "number, identifier, operator or parenthesis".into(),
                })
            }
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            expected: format!("{expected}, found {}", describe(self.peek())),
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Tok::Op('-') = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if let Tok::Op('^') = self.peek() {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num { value, imaginary } => {
                self.bump();
                Ok(Expr::Const(if imaginary {
                    Complex::new(0.0, value)
                } else {
                    Complex::new(value, 0.0)
                }))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "z" => {
                    self.bump();
                    Ok(Expr::Z)
                }
                "zbar" => {
                    self.bump();
                    Ok(Expr::Call(Func::Conj, Box::new(Expr::Z)))
                }
                "i" => {
                    self.bump();
                    Ok(Expr::Const(Complex::new(0.0, 1.0)))
                }
                other => match Func::from_name(other) {
                    Some(func) => {
                        self.bump();
                        if *self.peek() != Tok::LParen {
                            return self.error("'(' after function name");
                        }
                        self.bump();
                        let arg = self.expr()?;
                        self.expect_rparen()?;
                        Ok(Expr::Call(func, Box::new(arg)))
                    }
                    None => self.error("z, zbar, i, a number or a known function"),
                },
            },
            _ => self.error("operand"),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        if *self.peek() != Tok::RParen {
            return self.error("')'");
        }
        self.bump();
        Ok(())
    }
}

/// Parse an expression in `z`.
pub fn parse(source: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(source)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("operator or end of input");
    }
    Ok(e)
}

/// Parse a constant such as `0.5i` or `0.3 - 0.4i`.
pub fn parse_complex(source: &str) -> Result<Complex, ParseError> {
    let e = parse(source)?;
    if e.mentions_z() {
        return Err(ParseError {
            offset: 0,
            expected: "a constant (no z)".into(),
        });
    }
    eval(&e, Complex::new(0.0, 0.0)).map_err(|_| ParseError {
        offset: 0,
        expected: "a finite constant".into(),
    })
}

fn as_integer(c: Complex) -> Option<i32> {
    if c.im == 0.0 && c.re.fract() == 0.0 && c.re.abs() <= i32::MAX as f64 {
        Some(c.re as i32)
    } else {
        None
    }
}

/// Evaluate at `z` with principal branches for `log`, `sqrt` and
/// non-integer powers.
pub fn eval(e: &Expr, z: Complex) -> Result<Complex, EvalError> {
    let err = |kind| EvalError { z, kind };
    Ok(match e {
        Expr::Const(c) => *c,
        Expr::Z => z,
        Expr::Neg(a) => -eval(a, z)?,
        Expr::Binary(op, a, b) => {
            let (x, y) = (eval(a, z)?, eval(b, z)?);
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y == Complex::new(0.0, 0.0) {
                        return Err(err(EvalErrorKind::DivisionByZero));
                    }
                    x / y
                }
            }
        }
        Expr::Pow(a, b) => {
            let (x, y) = (eval(a, z)?, eval(b, z)?);
            let zero = Complex::new(0.0, 0.0);
            match as_integer(y) {
                Some(n) => {
                    if x == zero && n < 0 {
                        return Err(err(EvalErrorKind::DivisionByZero));
                    }
                    x.powi(n)
                }
                None if x == zero => {
                    if y.re > 0.0 {
                        zero
                    } else {
                        return Err(err(EvalErrorKind::ZeroPower));
                    }
                }
                None => (y * x.ln()).exp(),
            }
        }
        Expr::Call(func, a) => {
            let x = eval(a, z)?;
            match func {
                Func::Conj => x.conj(),
                Func::Abs => Complex::new(x.norm(), 0.0),
                Func::Re => Complex::new(x.re, 0.0),
                Func::Im => Complex::new(x.im, 0.0),
                Func::Exp => x.exp(),
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Log => {
                    if x == Complex::new(0.0, 0.0) {
                        return Err(err(EvalErrorKind::LogOfZero));
                    }
                    x.ln()
                }
                Func::Sqrt => x.sqrt(),
            }
        }
    })
}

impl Expr {
    pub fn mentions_z(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Z => true,
            Expr::Neg(a) | Expr::Call(_, a) => a.mentions_z(),
            Expr::Binary(_, a, b) | Expr::Pow(a, b) => a.mentions_z() || b.mentions_z(),
        }
    }

    /// Whether some `^` has an exponent that is not a constant integer.
    /// Such powers take the principal branch, which may be discontinuous on
    /// the disc.
    pub fn has_branch_power(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Z => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.has_branch_power(),
            Expr::Binary(_, a, b) => a.has_branch_power() || b.has_branch_power(),
            Expr::Pow(a, b) => {
                let integral = !b.mentions_z()
                    && eval(b, Complex::new(0.0, 0.0))
                        .ok()
                        .and_then(as_integer)
                        .is_some();
                !integral || a.has_branch_power() || b.has_branch_power()
            }
        }
    }
}

impl fmt::Display for Expr {
    /// Canonical form: every compound node is parenthesized, so re-parsing
    /// yields the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => {
                if c.im == 0.0 {
                    write!(f, "{}", c.re)
                } else if c.re == 0.0 {
                    write!(f, "{}i", c.im)
                } else {
                    write!(f, "({}{:+}i)", c.re, c.im)
                }
            }
            Expr::Z => write!(f, "z"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Pow(a, b) => write!(f, "({a}^{b})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

impl Oracle for Expr {
    fn eval(&self, z: Complex) -> Result<Complex, EvalError> {
        eval(self, z)
    }
}
