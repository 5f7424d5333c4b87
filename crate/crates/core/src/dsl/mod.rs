//! A small language for polynomial identities in the weighted Euler
//! polynomials, checked by exact evaluation over Q(w).
//!
//! ```text
//! forall n in 0..8 : w*E(n, x+1) + E(n, x) = 2*x^n
//! ```
//!
//! `E(i)` is the number, `E(i, p)` the polynomial at `p`, `Ek(k, i [, p])`
//! the order-k versions. Indices and exponents are integer-linear in bound
//! variables. Ranges are inclusive.

mod ast;
mod eval;
mod lexer;
mod parser;

use std::fmt;
use std::thread;

use serde_json::json;

use crate::arith::WRational;
use crate::euler::EulerTable;
use crate::umbral::XPolynomial;

pub use ast::{Expr, ExprKind, Identity, Index, Pos, Span};
pub use eval::{evaluate_expr, requirements, Bindings, Requirements};

/// The shipped corpus of identities.
pub const PAPER_CORPUS: &str = include_str!("../../corpus/paper.uid");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DslErrorKind {
    Lexical,
    Syntax,
    Unbound,
    Index,
    Evaluation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DslError {
    pub kind: DslErrorKind,
    pub span: Span,
    pub message: String,
    /// Tokens that would have been accepted, for syntax errors.
    pub expected: Vec<String>,
}

impl DslError {
    pub(crate) fn lexical(pos: Pos, message: &str) -> Self {
        Self::other(DslErrorKind::Lexical, Span { start: pos, end: pos }, message)
    }

    pub(crate) fn syntax(span: Span, expected: Vec<String>, found: String) -> Self {
        let message = format!("syntax error: expected {}, found {found}", join_alternatives(&expected));
        Self { kind: DslErrorKind::Syntax, span, message, expected }
    }

    pub(crate) fn other(kind: DslErrorKind, span: Span, message: &str) -> Self {
        Self { kind, span, message: message.to_string(), expected: Vec::new() }
    }

    pub fn pos(&self) -> Pos {
        self.span.start
    }
}

fn join_alternatives(items: &[String]) -> String {
    match items {
        [] => String::new(),
        [one] => one.clone(),
        [init @ .., last] => format!("{} or {last}", init.join(", ")),
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos(), self.message)
    }
}

impl std::error::Error for DslError {}

pub fn parse_identity(text: &str) -> Result<Identity, DslError> {
    parser::parse_at(text, 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictStatus::Pass => "pass",
            VerdictStatus::Fail => "fail",
            VerdictStatus::Error => "error",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: VerdictStatus,
    /// First failing value of the bound variable and `LHS - RHS` there.
    pub counterexample: Option<(u64, XPolynomial<WRational>)>,
    pub error: Option<DslError>,
}

impl Verdict {
    fn pass() -> Self {
        Self { status: VerdictStatus::Pass, counterexample: None, error: None }
    }

    fn error(e: DslError) -> Self {
        Self { status: VerdictStatus::Error, counterexample: None, error: Some(e) }
    }

    pub fn location(&self) -> Option<Span> {
        self.error.as_ref().map(|e| e.span)
    }

    pub fn summary(&self) -> String {
        match (&self.counterexample, &self.error) {
            (Some((n, d)), _) => format!("fail at n = {n}: LHS - RHS = {d}"),
            (_, Some(e)) => format!("error: {e}"),
            _ => "pass".to_string(),
        }
    }
}

/// Checks every value of the bound variable in order, stopping at the first
/// nonzero difference.
pub fn check_identity(id: &Identity, table: &EulerTable<WRational>) -> Verdict {
    for n in id.lo..=id.hi {
        match eval::difference_at(id, n, table) {
            Err(e) => return Verdict::error(e),
            Ok(d) if !d.is_zero() => {
                return Verdict { status: VerdictStatus::Fail, counterexample: Some((n, d)), error: None };
            }
            Ok(_) => {}
        }
    }
    Verdict::pass()
}

/// Parses one identity and checks it against a table sized for it.
pub fn check_source(text: &str) -> Verdict {
    match parse_identity(text) {
        Err(e) => Verdict::error(e),
        Ok(id) => match requirements(&id).table() {
            Ok(table) => check_identity(&id, &table),
            Err(e) => Verdict::error(DslError::other(DslErrorKind::Evaluation, id.span, &e.to_string())),
        },
    }
}

/// Outcome for one non-blank line of a `.uid` file.
#[derive(Clone, Debug, PartialEq)]
pub struct LineVerdict {
    pub line: usize,
    pub source: String,
    pub verdict: Verdict,
}

impl LineVerdict {
    /// `{source, status, at, difference}`; `at` is the failing n, or
    /// `line:col` for errors.
    pub fn to_json(&self) -> serde_json::Value {
        let v = &self.verdict;
        let at = match (&v.counterexample, &v.error) {
            (Some((n, _)), _) => json!(n),
            (_, Some(e)) => json!(e.pos().to_string()),
            _ => serde_json::Value::Null,
        };
        let mut out = json!({
            "line": self.line,
            "source": self.source,
            "status": v.status.to_string(),
            "at": at,
            "difference": v.counterexample.as_ref().map(|(_, d)| d.to_string()),
        });
        if let Some(e) = &v.error {
            out["error"] = json!(e.message);
        }
        out
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Checks a whole file: one identity per line, `#` comments, blank lines
/// ignored. All identities share one table sized for the largest demand.
pub fn check_file(text: &str) -> Vec<LineVerdict> {
    check_file_up_to(text, None)
}

/// As [`check_file`], with every range clipped to end at `cap` or earlier.
pub fn check_file_up_to(text: &str, cap: Option<u64>) -> Vec<LineVerdict> {
    let parsed: Vec<(usize, &str, Result<Identity, DslError>)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !strip_comment(l).is_empty())
        .map(|(i, l)| {
            let mut id = parser::parse_at(l, i + 1);
            if let (Ok(id), Some(cap)) = (&mut id, cap) {
                id.hi = id.hi.min(cap);
            }
            (i + 1, l.trim(), id)
        })
        .collect();
    let need = parsed
        .iter()
        .filter_map(|(_, _, r)| r.as_ref().ok())
        .map(requirements)
        .fold(Requirements::default(), Requirements::merge);
    let table = need.table();
    thread::scope(|s| {
        let handles: Vec<_> = parsed
            .iter()
            .map(|(line, source, parsed)| {
                let table = &table;
                s.spawn(move || {
                    let verdict = match (parsed, table) {
                        (Err(e), _) => Verdict::error(e.clone()),
                        (Ok(id), Ok(t)) => check_identity(id, t),
                        (Ok(id), Err(e)) => {
                            Verdict::error(DslError::other(DslErrorKind::Evaluation, id.span, &e.to_string()))
                        }
                    };
                    LineVerdict { line: *line, source: source.to_string(), verdict }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("identity check panicked")).collect()
    })
}
