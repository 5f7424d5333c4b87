use std::fmt;

use num_bigint::BigInt;

use crate::arith::Rational;

/// 1-based line and column (in characters).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: Pos,
    pub end: Pos,
}

impl Span {
    pub(crate) fn to(self, other: Span) -> Span {
        Span { start: self.start, end: other.end }
    }
}

/// `constant + sum coeff * var`, terms in order of first appearance.
#[derive(Clone, Debug)]
pub struct Index {
    pub terms: Vec<(String, i64)>,
    pub constant: i64,
    pub span: Span,
}

impl PartialEq for Index {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.constant == other.constant
    }
}

impl Index {
    pub(crate) fn constant(c: i64, span: Span) -> Self {
        Self { terms: Vec::new(), constant: c, span }
    }

    pub(crate) fn var(name: &str, span: Span) -> Self {
        Self { terms: vec![(name.to_string(), 1)], constant: 0, span }
    }

    pub(crate) fn add(mut self, other: Index, sign: i64) -> Self {
        for (name, c) in other.terms {
            match self.terms.iter_mut().find(|(n, _)| *n == name) {
                Some(slot) => slot.1 += sign * c,
                None => self.terms.push((name, sign * c)),
            }
        }
        self.terms.retain(|(_, c)| *c != 0);
        self.constant += sign * other.constant;
        self.span = self.span.to(other.span);
        self
    }

    pub(crate) fn scale(mut self, k: i64) -> Self {
        for t in &mut self.terms {
            t.1 *= k;
        }
        self.terms.retain(|(_, c)| *c != 0);
        self.constant *= k;
        self
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_atom(&self) -> bool {
        match self.terms.as_slice() {
            [] => self.constant >= 0,
            [(_, 1)] => self.constant == 0,
            _ => false,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "{}", self.constant);
        }
        for (i, (name, c)) in self.terms.iter().enumerate() {
            let sign = match (i, *c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            match c.abs() {
                1 => write!(f, "{sign}{name}")?,
                m => write!(f, "{sign}{m}*{name}")?,
            }
        }
        match self.constant {
            0 => Ok(()),
            c if c < 0 => write!(f, " - {}", -c),
            c => write!(f, " + {c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Int(BigInt),
    Rational(Rational),
    W,
    X,
    Var(String),
    /// `E(index)` or `E(index, arg)`.
    E { index: Index, arg: Option<Box<Expr>> },
    /// `Ek(order, index)` or `Ek(order, index, arg)`.
    Ek { order: Index, index: Index, arg: Option<Box<Expr>> },
    Binom(Index, Index),
    /// `sum(var = lo..hi, body)`, both bounds inclusive.
    Sum { var: String, lo: Index, hi: Index, body: Box<Expr> },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Index),
}

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self.kind {
            ExprKind::Add(..) | ExprKind::Sub(..) => 1,
            ExprKind::Mul(..) => 2,
            ExprKind::Neg(..) => 3,
            ExprKind::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match &self.kind {
            ExprKind::Int(n) => write!(f, "{n}"),
            ExprKind::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            ExprKind::W => f.write_str("w"),
            ExprKind::X => f.write_str("x"),
            ExprKind::Var(v) => f.write_str(v),
            ExprKind::E { index, arg } => {
                write!(f, "E({index}")?;
                if let Some(a) = arg {
                    write!(f, ", {a}")?;
                }
                write!(f, ")")
            }
            ExprKind::Ek { order, index, arg } => {
                write!(f, "Ek({order}, {index}")?;
                if let Some(a) = arg {
                    write!(f, ", {a}")?;
                }
                write!(f, ")")
            }
            ExprKind::Binom(a, b) => write!(f, "binom({a}, {b})"),
            ExprKind::Sum { var, lo, hi, body } => write!(f, "sum({var} = {lo}..{hi}, {body})"),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(if matches!(self.kind, ExprKind::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 2)
            }
            ExprKind::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("*")?;
                b.write_at(f, 3)
            }
            ExprKind::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, 3)
            }
            ExprKind::Pow(base, exp) => {
                base.write_at(f, 5)?;
                if exp.is_atom() {
                    write!(f, "^{exp}")
                } else {
                    write!(f, "^({exp})")
                }
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// `forall var in lo..hi : lhs = rhs`, range inclusive.
#[derive(Clone, Debug)]
pub struct Identity {
    pub var: String,
    pub lo: u64,
    pub hi: u64,
    pub lhs: Expr,
    pub rhs: Expr,
    pub span: Span,
}

impl PartialEq for Identity {
    fn eq(&self, other: &Self) -> bool {
        (&self.var, self.lo, self.hi, &self.lhs, &self.rhs) == (&other.var, other.lo, other.hi, &other.lhs, &other.rhs)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "forall {} in {}..{} : {} = {}", self.var, self.lo, self.hi, self.lhs, self.rhs)
    }
}
