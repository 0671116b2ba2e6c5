//! Coefficient expressions.
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := factor (("*"|"/") factor)* ;
//! factor := ("-" factor) | power ;
//! power  := atom ("^" factor)? ;
//! atom   := NUMBER | IDENT | "(" expr ")" ;
//! NUMBER := INT | INT "." DIGITS | INT "/" INT ;
//! IDENT  := letter (letter|digit)* ;
//! ```
//!
//! `INT "/" INT` is lexed greedily as a single rational literal, so `1/2` is a
//! literal while `1/(2)` and `m/2` are divisions.

use std::collections::BTreeMap;
use std::fmt;

use dashu::integer::{IBig, UBig};

use crate::scalar::rational::render_rational;
use crate::scalar::{Field, Rational, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative literal; negation is always an explicit [`Expr::Neg`].
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {}", expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<&'static str> },
    #[error("unknown character {ch:?} at offset {offset}")]
    UnknownChar { offset: usize, ch: char },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownChar { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("unbound identifier {0:?}")]
    Unbound(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
    #[error("exponent {0} is not an integer")]
    NonIntegerExponent(String),
    #[error("exponent depends on {0:?}, which has no exact value")]
    InexactExponent(String),
    #[error("exponent {0} out of range")]
    ExponentRange(String),
    #[error(transparent)]
    Scalar(ScalarError),
}

impl From<ScalarError> for EvalError {
    fn from(e: ScalarError) -> Self {
        match e {
            ScalarError::DivisionByZero | ScalarError::NonInvertibleSeries => EvalError::DivisionByZero,
            ScalarError::ZeroToNegativePower => EvalError::ZeroToNegativePower,
            other => EvalError::Scalar(other),
        }
    }
}

/// A bound identifier: its value in the working field and, when known, its
/// exact rational value (needed wherever it appears in an exponent).
#[derive(Debug, Clone, PartialEq)]
pub struct Binding<E> {
    pub value: E,
    pub exact: Option<Rational>,
}

impl<E> Binding<E> {
    pub fn new(value: E, exact: Option<Rational>) -> Self {
        Self { value, exact }
    }
}

pub type Bindings<E> = BTreeMap<String, Binding<E>>;

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_from = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let int_end = digits_from(i);
                let int = UBig::from_str_radix(&text[i..int_end], 10).expect("digits");
                let next_is_digit = |k: usize| k < bytes.len() && bytes[k].is_ascii_digit();
                let (value, end) = if int_end < bytes.len() && bytes[int_end] == b'.' && next_is_digit(int_end + 1) {
                    let frac_end = digits_from(int_end + 1);
                    let frac = &text[int_end + 1..frac_end];
                    let scale = UBig::from(10u8).pow(frac.len());
                    let num = int * &scale + UBig::from_str_radix(frac, 10).expect("digits");
                    (Rational::from_parts(IBig::from(num), scale), frac_end)
                } else if int_end < bytes.len() && bytes[int_end] == b'/' && next_is_digit(int_end + 1) {
                    let den_end = digits_from(int_end + 1);
                    let den = UBig::from_str_radix(&text[int_end + 1..den_end], 10).expect("digits");
                    if den == UBig::ZERO {
                        // `3/0` is a division that fails at evaluation, not a literal
                        (Rational::from(int), int_end)
                    } else {
                        (Rational::from_parts(IBig::from(int), den), den_end)
                    }
                } else {
                    (Rational::from(int), int_end)
                };
                out.push((start, Tok::Num(value)));
                i = end;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut j = i + 1;
                while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                    j += 1;
                }
                out.push((start, Tok::Ident(text[i..j].to_string())));
                i = j;
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().expect("non-empty");
                return Err(ParseError::UnknownChar { offset: i, ch });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn expected(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError::Syntax { offset: self.offset(), expected }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let exp = self.factor()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(Expr::Num(r))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.expected(vec!["\")\"", "operator"])),
                }
            }
            _ => Err(self.expected(vec!["expression"])),
        }
    }
}

/// Parses a coefficient expression.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.expected(vec!["operator", "end of input"]));
    }
    Ok(e)
}

impl Expr {
    pub fn var(name: &str) -> Self {
        Expr::Var(name.to_string())
    }

    /// Identifiers appearing in the expression, sorted and deduplicated.
    pub fn identifiers(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Num(_) => {}
                Expr::Var(v) => out.push(v.clone()),
                Expr::Neg(x) => walk(x, out),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// Evaluates in `field`. Exponents are evaluated exactly and must be
    /// integers; the power itself uses repeated squaring.
    pub fn eval<F: Field>(&self, field: &F, bindings: &Bindings<F::Elem>) -> Result<F::Elem, EvalError> {
        Ok(match self {
            Expr::Num(r) => field.from_rational(r),
            Expr::Var(v) => bindings.get(v).ok_or_else(|| EvalError::Unbound(v.clone()))?.value.clone(),
            Expr::Neg(x) => field.neg(&x.eval(field, bindings)?),
            Expr::Add(a, b) => field.add(&a.eval(field, bindings)?, &b.eval(field, bindings)?),
            Expr::Sub(a, b) => field.sub(&a.eval(field, bindings)?, &b.eval(field, bindings)?),
            Expr::Mul(a, b) => field.mul(&a.eval(field, bindings)?, &b.eval(field, bindings)?),
            Expr::Div(a, b) => field.div(&a.eval(field, bindings)?, &b.eval(field, bindings)?)?,
            Expr::Pow(a, b) => {
                let base = a.eval(field, bindings)?;
                let e = integer_exponent(b, bindings)?;
                field.powi(&base, e)?
            }
        })
    }

    /// Exact rational evaluation using only the bindings' exact values.
    pub fn eval_exact<E>(&self, bindings: &Bindings<E>) -> Result<Rational, EvalError> {
        Ok(match self {
            Expr::Num(r) => r.clone(),
            Expr::Var(v) => {
                let b = bindings.get(v).ok_or_else(|| EvalError::Unbound(v.clone()))?;
                b.exact.clone().ok_or_else(|| EvalError::InexactExponent(v.clone()))?
            }
            Expr::Neg(x) => -x.eval_exact(bindings)?,
            Expr::Add(a, b) => a.eval_exact(bindings)? + b.eval_exact(bindings)?,
            Expr::Sub(a, b) => a.eval_exact(bindings)? - b.eval_exact(bindings)?,
            Expr::Mul(a, b) => a.eval_exact(bindings)? * b.eval_exact(bindings)?,
            Expr::Div(a, b) => {
                let d = b.eval_exact(bindings)?;
                if d.is_zero() {
                    return Err(EvalError::DivisionByZero);
                }
                a.eval_exact(bindings)? / d
            }
            Expr::Pow(a, b) => {
                let base = a.eval_exact(bindings)?;
                let e = integer_exponent(b, bindings)?;
                crate::scalar::RationalField.powi(&base, e)?
            }
        })
    }
}

fn integer_exponent<E>(e: &Expr, bindings: &Bindings<E>) -> Result<i64, EvalError> {
    let r = e.eval_exact(bindings)?;
    if r.denominator() != &UBig::ONE {
        return Err(EvalError::NonIntegerExponent(render_rational(&r)));
    }
    i64::try_from(r.numerator().clone()).map_err(|_| EvalError::ExponentRange(render_rational(&r)))
}

/// Fully parenthesized rendering; re-parses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => write!(f, "{}", render_rational(r)),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(x) => write!(f, "(-{x})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, b) => write!(f, "({a}^{b})"),
        }
    }
}
