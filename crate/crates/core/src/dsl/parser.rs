use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::ast::{Expr, ExprKind, Identity, Index, Span};
use super::lexer::{lex, Tok, Token};
use super::{DslError, DslErrorKind};

const RESERVED: [&str; 8] = ["forall", "in", "w", "x", "E", "Ek", "binom", "sum"];

/// Parses one identity; positions are reported from `first_line`.
pub(crate) fn parse_at(text: &str, first_line: usize) -> Result<Identity, DslError> {
    let mut p = Parser { toks: lex(text, first_line)?, at: 0 };
    let id = p.identity()?;
    check_bound(&id)?;
    Ok(id)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

type PResult<T> = Result<T, DslError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> DslError {
        let t = self.peek();
        DslError::syntax(t.span, expected.iter().map(|s| s.to_string()).collect(), t.tok.to_string())
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if self.peek().tok == tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&[&tok.to_string()]))
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => Err(self.unexpected(&[&format!("`{kw}`")])),
        }
    }

    fn binder(&mut self) -> PResult<(String, Span)> {
        match &self.peek().tok {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                let t = self.bump();
                Ok((s_of(&t), t.span))
            }
            _ => Err(self.unexpected(&["variable name"])),
        }
    }

    fn natural(&mut self) -> PResult<u64> {
        match &self.peek().tok {
            Tok::Int(n) => {
                let v = n.to_u64();
                let t = self.bump();
                v.ok_or_else(|| DslError::other(DslErrorKind::Syntax, t.span, "range bound too large"))
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    fn identity(&mut self) -> PResult<Identity> {
        let start = self.peek().span;
        self.keyword("forall")?;
        let (var, _) = self.binder()?;
        self.keyword("in")?;
        let lo = self.natural()?;
        self.expect(Tok::DotDot)?;
        let hi = self.natural()?;
        self.expect(Tok::Colon)?;
        let lhs = self.expr()?;
        if self.peek().tok != Tok::Eq {
            return Err(self.unexpected(&["`=`"]));
        }
        self.bump();
        let rhs = self.expr()?;
        if self.peek().tok != Tok::Eof {
            return Err(self.unexpected(&["end of input"]));
        }
        Ok(Identity { var, lo, hi, span: start.to(rhs.span), lhs, rhs })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            let sub = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.to(rhs.span);
            let (a, b) = (Box::new(lhs), Box::new(rhs));
            lhs = Expr { kind: if sub { ExprKind::Sub(a, b) } else { ExprKind::Add(a, b) }, span };
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Star) {
            let rhs = self.unary()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr { kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)), span };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.peek().tok == Tok::Minus {
            let start = self.bump().span;
            let inner = self.unary()?;
            let span = start.to(inner.span);
            return Ok(Expr { kind: ExprKind::Neg(Box::new(inner)), span });
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.primary()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let exp = match self.peek().tok.clone() {
            Tok::Minus => {
                return Err(DslError::other(DslErrorKind::Syntax, self.peek().span, "negative literal exponent"));
            }
            Tok::Int(_) | Tok::Ident(_) => {
                let atom = self.primary()?;
                to_index(&atom)?
            }
            Tok::LParen => {
                let open = self.bump().span;
                let inner = self.expr()?;
                let close = self.expect(Tok::RParen)?;
                let mut idx = to_index(&inner)?;
                idx.span = open.to(close);
                idx
            }
            _ => return Err(self.unexpected(&["integer", "variable name", "`(`"])),
        };
        if exp.is_constant() && exp.constant < 0 {
            return Err(DslError::other(DslErrorKind::Syntax, exp.span, "negative literal exponent"));
        }
        let span = base.span.to(exp.span);
        Ok(Expr { kind: ExprKind::Pow(Box::new(base), exp), span })
    }

    fn index(&mut self) -> PResult<Index> {
        to_index(&self.expr()?)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let t = self.peek().clone();
        let kind = match &t.tok {
            Tok::Int(n) => ExprKind::Int(n.clone()),
            Tok::Rat(r) => ExprKind::Rational(r.clone()),
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                let close = self.expect(Tok::RParen)?;
                return Ok(Expr { kind: inner.kind, span: t.span.to(close) });
            }
            Tok::Ident(name) => match name.as_str() {
                "w" => ExprKind::W,
                "x" => ExprKind::X,
                "E" | "Ek" | "binom" | "sum" => return self.call(),
                "forall" | "in" => return Err(self.unexpected(&["expression"])),
                _ => ExprKind::Var(name.clone()),
            },
            _ => return Err(self.unexpected(&["expression"])),
        };
        self.bump();
        Ok(Expr { kind, span: t.span })
    }

    /// After a required argument: `,` continues, `)` closes.
    fn more_args(&mut self, optional: bool) -> PResult<bool> {
        match self.peek().tok {
            Tok::Comma => {
                self.bump();
                Ok(true)
            }
            Tok::RParen if optional => Ok(false),
            _ if optional => Err(self.unexpected(&["`,`", "`)`"])),
            _ => Err(self.unexpected(&["`,`"])),
        }
    }

    fn call(&mut self) -> PResult<Expr> {
        let head = self.bump();
        let name = s_of(&head);
        self.expect(Tok::LParen)?;
        let kind = match name.as_str() {
            "E" => {
                let index = self.index()?;
                let arg = if self.more_args(true)? { Some(Box::new(self.expr()?)) } else { None };
                ExprKind::E { index, arg }
            }
            "Ek" => {
                let order = self.index()?;
                self.more_args(false)?;
                let index = self.index()?;
                let arg = if self.more_args(true)? { Some(Box::new(self.expr()?)) } else { None };
                ExprKind::Ek { order, index, arg }
            }
            "binom" => {
                let top = self.index()?;
                self.more_args(false)?;
                ExprKind::Binom(top, self.index()?)
            }
            _ => {
                let (var, _) = self.binder()?;
                self.expect(Tok::Eq)?;
                let lo = self.index()?;
                self.expect(Tok::DotDot)?;
                let hi = self.index()?;
                self.more_args(false)?;
                ExprKind::Sum { var, lo, hi, body: Box::new(self.expr()?) }
            }
        };
        let close = self.expect(Tok::RParen)?;
        Ok(Expr { kind, span: head.span.to(close) })
    }
}

fn s_of(t: &Token) -> String {
    match &t.tok {
        Tok::Ident(s) => s.clone(),
        _ => unreachable!("identifier token"),
    }
}

fn small(n: &BigInt, span: Span) -> PResult<i64> {
    n.to_i64()
        .filter(|v| v.abs() < 1 << 40)
        .ok_or_else(|| DslError::other(DslErrorKind::Index, span, "index literal too large"))
}

/// Reads an expression as an integer-linear form in variables.
pub(crate) fn to_index(e: &Expr) -> PResult<Index> {
    let bad = |what: &str| DslError::other(DslErrorKind::Index, e.span, &format!("index must be integer-linear in bound variables; found {what}"));
    Ok(match &e.kind {
        ExprKind::Int(n) => Index::constant(small(n, e.span)?, e.span),
        ExprKind::Var(v) => Index::var(v, e.span),
        ExprKind::Add(a, b) => to_index(a)?.add(to_index(b)?, 1),
        ExprKind::Sub(a, b) => to_index(a)?.add(to_index(b)?, -1),
        ExprKind::Neg(a) => {
            let mut i = to_index(a)?.scale(-1);
            i.span = e.span;
            i
        }
        ExprKind::Mul(a, b) => {
            let (a, b) = (to_index(a)?, to_index(b)?);
            let mut i = match (a.is_constant(), b.is_constant()) {
                (true, _) => b.scale(a.constant),
                (_, true) => a.scale(b.constant),
                _ => return Err(bad("a product of variables")),
            };
            i.span = e.span;
            i
        }
        ExprKind::Rational(r) if r.is_integer() && !r.is_negative() => Index::constant(small(r.numer(), e.span)?, e.span),
        ExprKind::Rational(_) => return Err(bad("a rational literal")),
        ExprKind::W => return Err(bad("`w`")),
        ExprKind::X => return Err(bad("`x`")),
        ExprKind::Pow(..) => return Err(bad("a power")),
        ExprKind::E { .. } | ExprKind::Ek { .. } => return Err(bad("a Euler term")),
        ExprKind::Binom(..) => return Err(bad("`binom`")),
        ExprKind::Sum { .. } => return Err(bad("`sum`")),
    })
}

fn check_bound(id: &Identity) -> PResult<()> {
    let mut scope = vec![id.var.clone()];
    walk(&id.lhs, &mut scope)?;
    walk(&id.rhs, &mut scope)
}

fn index_bound(i: &Index, scope: &[String]) -> PResult<()> {
    match i.terms.iter().find(|(v, _)| !scope.contains(v)) {
        Some((v, _)) => Err(DslError::other(DslErrorKind::Unbound, i.span, &format!("unbound variable `{v}`"))),
        None => Ok(()),
    }
}

fn walk(e: &Expr, scope: &mut Vec<String>) -> PResult<()> {
    match &e.kind {
        ExprKind::Int(_) | ExprKind::Rational(_) | ExprKind::W | ExprKind::X => Ok(()),
        ExprKind::Var(v) if scope.contains(v) => Ok(()),
        ExprKind::Var(v) => Err(DslError::other(DslErrorKind::Unbound, e.span, &format!("unbound variable `{v}`"))),
        ExprKind::E { index, arg } => {
            index_bound(index, scope)?;
            arg.as_deref().map_or(Ok(()), |a| walk(a, scope))
        }
        ExprKind::Ek { order, index, arg } => {
            index_bound(order, scope)?;
            index_bound(index, scope)?;
            arg.as_deref().map_or(Ok(()), |a| walk(a, scope))
        }
        ExprKind::Binom(a, b) => {
            index_bound(a, scope)?;
            index_bound(b, scope)
        }
        ExprKind::Sum { var, lo, hi, body } => {
            index_bound(lo, scope)?;
            index_bound(hi, scope)?;
            scope.push(var.clone());
            let r = walk(body, scope);
            scope.pop();
            r
        }
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) => {
            walk(a, scope)?;
            walk(b, scope)
        }
        ExprKind::Neg(a) => walk(a, scope),
        ExprKind::Pow(a, i) => {
            walk(a, scope)?;
            index_bound(i, scope)
        }
    }
}
