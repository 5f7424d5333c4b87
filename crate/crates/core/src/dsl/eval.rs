use super::ast::{Expr, ExprKind, Identity, Index};
use super::{DslError, DslErrorKind};
use crate::arith::{binomial, Field, WRational};
use crate::euler::EulerTable;
use crate::umbral::XPolynomial;

type Poly = XPolynomial<WRational>;

/// Variable bindings, innermost last.
pub type Bindings = Vec<(String, i64)>;

fn lookup(b: &Bindings, name: &str) -> i64 {
    b.iter().rev().find(|(n, _)| n == name).map(|(_, v)| *v).expect("variables are bound after parsing")
}

fn index_value(i: &Index, b: &Bindings) -> i64 {
    i.terms.iter().fold(i.constant, |acc, (name, c)| acc + c * lookup(b, name))
}

fn describe(b: &Bindings) -> String {
    b.iter().map(|(n, v)| format!("{n} = {v}")).collect::<Vec<_>>().join(", ")
}

fn nonneg(i: &Index, b: &Bindings, what: &str) -> Result<usize, DslError> {
    let v = index_value(i, b);
    usize::try_from(v).map_err(|_| {
        DslError::other(
            DslErrorKind::Evaluation,
            i.span,
            &format!("{what} `{i}` is {v} with {}", describe(b)),
        )
    })
}

fn from_table<'t>(
    table: &'t EulerTable<WRational>,
    order: usize,
    n: usize,
    index: &Index,
) -> Result<(&'t WRational, &'t Poly), DslError> {
    let missing = |what: String| DslError::other(DslErrorKind::Evaluation, index.span, &what);
    if order == 0 || order > table.max_order() {
        return Err(missing(format!("order {order} not precomputed (table has orders 1..={})", table.max_order())));
    }
    match (table.number(order, n), table.poly(order, n)) {
        (Ok(e), Ok(p)) => Ok((e, p)),
        _ => Err(missing(format!("index {n} not precomputed (table covers n < {})", table.count()))),
    }
}

fn euler_term(
    table: &EulerTable<WRational>,
    order: usize,
    index: &Index,
    arg: &Option<Box<Expr>>,
    b: &mut Bindings,
) -> Result<Poly, DslError> {
    let n = nonneg(index, b, "index")?;
    let (number, poly) = from_table(table, order, n, index)?;
    match arg {
        None => Ok(Poly::constant(number.clone())),
        Some(a) => Ok(poly.compose(&evaluate_expr(a, b, table)?)),
    }
}

/// Value of `expr` as a polynomial in `x` over Q(w).
pub fn evaluate_expr(expr: &Expr, b: &mut Bindings, table: &EulerTable<WRational>) -> Result<Poly, DslError> {
    Ok(match &expr.kind {
        ExprKind::Int(n) => Poly::constant(WRational::from_integer(n.clone())),
        ExprKind::Rational(r) => Poly::constant(WRational::from_rational(r)),
        ExprKind::W => Poly::constant(WRational::w()),
        ExprKind::X => Poly::x(),
        ExprKind::Var(v) => Poly::constant(WRational::from_i64(lookup(b, v))),
        ExprKind::E { index, arg } => euler_term(table, 1, index, arg, b)?,
        ExprKind::Ek { order, index, arg } => {
            let k = nonneg(order, b, "order")?;
            euler_term(table, k, index, arg, b)?
        }
        ExprKind::Binom(top, bottom) => {
            let n = nonneg(top, b, "binomial top")?;
            Poly::constant(WRational::from_integer(binomial(n as u64, index_value(bottom, b))))
        }
        ExprKind::Sum { var, lo, hi, body } => {
            let (lo, hi) = (index_value(lo, b), index_value(hi, b));
            let mut acc = Poly::zero();
            for i in lo..=hi {
                b.push((var.clone(), i));
                let term = evaluate_expr(body, b, table);
                b.pop();
                acc = &acc + &term?;
            }
            acc
        }
        ExprKind::Add(l, r) => &evaluate_expr(l, b, table)? + &evaluate_expr(r, b, table)?,
        ExprKind::Sub(l, r) => &evaluate_expr(l, b, table)? - &evaluate_expr(r, b, table)?,
        ExprKind::Mul(l, r) => &evaluate_expr(l, b, table)? * &evaluate_expr(r, b, table)?,
        ExprKind::Neg(a) => -&evaluate_expr(a, b, table)?,
        ExprKind::Pow(base, exp) => {
            let e = nonneg(exp, b, "exponent")?;
            let base = evaluate_expr(base, b, table)?;
            (0..e).fold(Poly::one(), |acc, _| &acc * &base)
        }
    })
}

/// Largest Euler index and order an identity can reach over its range.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Requirements {
    pub max_index: Option<usize>,
    pub max_order: usize,
}

impl Requirements {
    pub fn merge(self, other: Requirements) -> Requirements {
        Requirements {
            max_index: self.max_index.max(other.max_index),
            max_order: self.max_order.max(other.max_order),
        }
    }

    /// A symbolic table large enough for everything recorded.
    pub fn table(&self) -> crate::Result<EulerTable<WRational>> {
        EulerTable::symbolic(self.max_index.map_or(1, |i| i + 1), self.max_order.max(1))
    }

    fn note(&mut self, order: i64, index: i64) {
        if order >= 1 && index >= 0 {
            self.max_order = self.max_order.max(order as usize);
            self.max_index = self.max_index.max(Some(index as usize));
        }
    }
}

/// Walks every binding the identity's range and sums produce, without
/// evaluating anything; negative indices are left for evaluation to report.
pub fn requirements(id: &Identity) -> Requirements {
    let mut req = Requirements::default();
    for n in id.lo..=id.hi {
        let mut b = vec![(id.var.clone(), n as i64)];
        scan(&id.lhs, &mut b, &mut req);
        scan(&id.rhs, &mut b, &mut req);
    }
    req
}

fn scan(e: &Expr, b: &mut Bindings, req: &mut Requirements) {
    match &e.kind {
        ExprKind::E { index, arg } => {
            req.note(1, index_value(index, b));
            if let Some(a) = arg {
                scan(a, b, req);
            }
        }
        ExprKind::Ek { order, index, arg } => {
            req.note(index_value(order, b), index_value(index, b));
            if let Some(a) = arg {
                scan(a, b, req);
            }
        }
        ExprKind::Sum { var, lo, hi, body } => {
            for i in index_value(lo, b)..=index_value(hi, b) {
                b.push((var.clone(), i));
                scan(body, b, req);
                b.pop();
            }
        }
        ExprKind::Add(l, r) | ExprKind::Sub(l, r) | ExprKind::Mul(l, r) => {
            scan(l, b, req);
            scan(r, b, req);
        }
        ExprKind::Neg(a) | ExprKind::Pow(a, _) => scan(a, b, req),
        _ => {}
    }
}

/// `lhs - rhs` at one value of the bound variable.
pub(crate) fn difference_at(id: &Identity, n: u64, table: &EulerTable<WRational>) -> Result<Poly, DslError> {
    let mut b = vec![(id.var.clone(), n as i64)];
    let lhs = evaluate_expr(&id.lhs, &mut b, table)?;
    let rhs = evaluate_expr(&id.rhs, &mut b, table)?;
    Ok(&lhs - &rhs)
}

