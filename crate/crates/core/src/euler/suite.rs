use std::fmt;
use std::thread;

use num_traits::One;
use serde::Serialize;

use super::{classical_euler_polys, multinomial_sum, weighted_euler_gf, EulerTable};
use crate::arith::{factorial, Field, Rational, WRational};
use crate::error::{Error, Result};
use crate::series::{euler_g, Series};
use crate::umbral::{appell_basis, apply_functional, pairing, XPolynomial};

/// One identity of the suite, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CheckLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
}

impl CheckLabel {
    pub const ALL: [CheckLabel; 11] = [
        CheckLabel::A,
        CheckLabel::B,
        CheckLabel::C,
        CheckLabel::D,
        CheckLabel::E,
        CheckLabel::F,
        CheckLabel::G,
        CheckLabel::H,
        CheckLabel::I,
        CheckLabel::J,
        CheckLabel::K,
    ];

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn identity(self) -> &'static str {
        match self {
            CheckLabel::A => "appell lowering t E_n = n E_{n-1}",
            CheckLabel::B => "appell inversion g^k E_n = x^n",
            CheckLabel::C => "operator recurrence E_{n+1} = (x - k g'/g) E_n",
            CheckLabel::D => "reflection w E_n(x+1) + E_n(x) = 2x^n",
            CheckLabel::E => "functional <EGF|x^n> = E_n",
            CheckLabel::F => "operator EGF^k x^n = E_n(x)",
            CheckLabel::G => "order-k functional <EGF^k|x^n> = E_n",
            CheckLabel::H => "order-k binomial form = appell basis of g^k",
            CheckLabel::I => "multinomial identity",
            CheckLabel::J => "expansion of EGF in g t^k",
            CheckLabel::K => "w = 1 reduction to classical Euler",
        }
    }
}

impl fmt::Display for CheckLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.letter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// First failing instance; `difference` is `LHS - RHS` rendered as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: usize,
    pub k: usize,
    pub difference: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub label: CheckLabel,
    pub status: CheckStatus,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub max_n: usize,
    pub max_k: usize,
    pub results: Vec<CheckResult>,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    check: char,
    identity: &'static str,
    status: CheckStatus,
    #[serde(rename = "maxN")]
    max_n: usize,
    #[serde(rename = "maxK")]
    max_k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<&'a Counterexample>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.status == CheckStatus::Pass)
    }

    pub fn result(&self, label: CheckLabel) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.label == label)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == CheckStatus::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite maxN={} maxK={}\n", self.max_n, self.max_k);
        for r in &self.results {
            let status = match r.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
            };
            out.push_str(&format!("{:<4} {:<48} {status}", r.label.to_string(), r.label.identity()));
            if let Some(c) = &r.counterexample {
                out.push_str(&format!("  n={} k={} difference: {}", c.n, c.k, c.difference));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<JsonRow> = self
            .results
            .iter()
            .map(|r| JsonRow {
                check: r.label.letter(),
                identity: r.label.identity(),
                status: r.status,
                max_n: self.max_n,
                max_k: self.max_k,
                counterexample: r.counterexample.as_ref(),
            })
            .collect();
        serde_json::to_value(rows).expect("report rows serialize")
    }
}

/// Builds the symbolic table for `n < max_n`, `k <= max_k` and checks it.
pub fn verify_paper_suite(max_n: usize, max_k: usize) -> Result<Report> {
    if max_n < 2 || max_k < 1 {
        return Err(Error::OutOfRange(format!("suite needs maxN >= 2 and maxK >= 1, got {max_n}, {max_k}")));
    }
    Ok(verify_table(&EulerTable::symbolic(max_n, max_k)?))
}

/// Runs every check against the numbers and polynomials stored in `table`,
/// recomputing the reference side independently.
pub fn verify_table(table: &EulerTable<WRational>) -> Report {
    let ctx = Context::new(table);
    let mut results: Vec<CheckResult> = thread::scope(|s| {
        let handles: Vec<_> = CheckLabel::ALL
            .iter()
            .map(|&label| {
                let ctx = &ctx;
                s.spawn(move || {
                    let counterexample = ctx.run(label);
                    CheckResult {
                        label,
                        status: if counterexample.is_some() { CheckStatus::Fail } else { CheckStatus::Pass },
                        counterexample,
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    results.sort_by_key(|r| r.label);
    Report { max_n: table.count(), max_k: table.max_order(), results }
}

type Q = WRational;
type Poly = XPolynomial<Q>;

struct Context<'a> {
    table: &'a EulerTable<Q>,
    n_max: usize,
    k_max: usize,
    w: Q,
}

fn differ<T: PartialEq + Clone, D: ToString>(
    n: usize,
    k: usize,
    lhs: &T,
    rhs: &T,
    diff: impl FnOnce(&T, &T) -> D,
) -> Option<Counterexample> {
    (lhs != rhs).then(|| Counterexample { n, k, difference: diff(lhs, rhs).to_string() })
}

fn poly_diff(n: usize, k: usize, lhs: &Poly, rhs: &Poly) -> Option<Counterexample> {
    differ(n, k, lhs, rhs, |a, b| a - b)
}

fn scalar_diff(n: usize, k: usize, lhs: &Q, rhs: &Q) -> Option<Counterexample> {
    differ(n, k, lhs, rhs, |a, b| a - b)
}

/// Failures from evaluation itself (a pole, a short series) are reported as
/// counterexamples too; they cannot occur on a well-formed table.
fn failed(n: usize, k: usize, e: Error) -> Option<Counterexample> {
    Some(Counterexample { n, k, difference: format!("error: {e}") })
}

macro_rules! attempt {
    ($e:expr, $n:expr, $k:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return failed($n, $k, e),
        }
    };
}

impl<'a> Context<'a> {
    fn new(table: &'a EulerTable<Q>) -> Self {
        Self { table, n_max: table.count(), k_max: table.max_order(), w: table.weight().clone() }
    }

    fn poly(&self, k: usize, n: usize) -> &Poly {
        &self.table.polys(k).expect("order in range")[n]
    }

    fn number(&self, k: usize, n: usize) -> &Q {
        &self.table.numbers(k).expect("order in range")[n]
    }

    fn g_pow(&self, k: usize, precision: usize) -> Series<Q> {
        euler_g(&self.w, precision).pow(k)
    }

    /// First counterexample in (n, k) order.
    fn over_nk(&self, ns: std::ops::Range<usize>, mut f: impl FnMut(usize, usize) -> Option<Counterexample>) -> Option<Counterexample> {
        for n in ns {
            for k in 1..=self.k_max {
                if let Some(c) = f(n, k) {
                    return Some(c);
                }
            }
        }
        None
    }

    fn run(&self, label: CheckLabel) -> Option<Counterexample> {
        match label {
            CheckLabel::A => self.lowering(),
            CheckLabel::B => self.inversion(),
            CheckLabel::C => self.recurrence(),
            CheckLabel::D => self.reflection(),
            CheckLabel::E => self.functional(),
            CheckLabel::F => self.operator(),
            CheckLabel::G => self.order_k_functional(),
            CheckLabel::H => self.binomial_form(),
            CheckLabel::I => self.multinomial(),
            CheckLabel::J => self.expansion(),
            CheckLabel::K => self.classical(),
        }
    }

    fn lowering(&self) -> Option<Counterexample> {
        let t = Series::t(self.n_max + 1);
        self.over_nk(1..self.n_max, |n, k| {
            let lhs = attempt!(apply_functional(&t, self.poly(k, n)), n, k);
            poly_diff(n, k, &lhs, &self.poly(k, n - 1).scale(&Q::from_usize(n)))
        })
    }

    fn inversion(&self) -> Option<Counterexample> {
        let gs: Vec<Series<Q>> = (1..=self.k_max).map(|k| self.g_pow(k, self.n_max)).collect();
        self.over_nk(0..self.n_max, |n, k| {
            let lhs = attempt!(apply_functional(&gs[k - 1], self.poly(k, n)), n, k);
            poly_diff(n, k, &lhs, &Poly::x_pow(n))
        })
    }

    fn recurrence(&self) -> Option<Counterexample> {
        let g = euler_g(&self.w, self.n_max + 2);
        let ratio = match g.derivative().and_then(|d| Ok(&d * &g.inverse()?)) {
            Ok(r) => r,
            Err(e) => return failed(0, 1, e),
        };
        self.over_nk(0..self.n_max - 1, |n, k| {
            let op = ratio.truncate(n + 2).scale(&Q::from_usize(k));
            let p = self.poly(k, n);
            let lowered = attempt!(apply_functional(&op, p), n, k);
            let rhs = &(&Poly::x() * p) - &lowered;
            poly_diff(n + 1, k, self.poly(k, n + 1), &rhs)
        })
    }

    fn reflection(&self) -> Option<Counterexample> {
        let two = Q::from_i64(2);
        (0..self.n_max).find_map(|n| {
            let p = self.poly(1, n);
            let lhs = &p.shift(&Q::one()).scale(&self.w) + p;
            poly_diff(n, 1, &lhs, &Poly::monomial(two.clone(), n))
        })
    }

    fn functional(&self) -> Option<Counterexample> {
        let egf = attempt!(weighted_euler_gf(&self.w, self.n_max, 1), 0, 1);
        (0..self.n_max).find_map(|n| {
            let lhs = attempt!(pairing(&egf, &Poly::x_pow(n)), n, 1);
            scalar_diff(n, 1, &lhs, self.number(1, n))
        })
    }

    fn egf_powers(&self) -> Result<Vec<Series<Q>>> {
        (1..=self.k_max).map(|k| weighted_euler_gf(&self.w, self.n_max, k)).collect()
    }

    fn operator(&self) -> Option<Counterexample> {
        let egfs = attempt!(self.egf_powers(), 0, 1);
        self.over_nk(0..self.n_max, |n, k| {
            let lhs = attempt!(apply_functional(&egfs[k - 1], &Poly::x_pow(n)), n, k);
            poly_diff(n, k, &lhs, self.poly(k, n))
        })
    }

    fn order_k_functional(&self) -> Option<Counterexample> {
        let egfs = attempt!(self.egf_powers(), 0, 1);
        self.over_nk(0..self.n_max, |n, k| {
            let lhs = attempt!(pairing(&egfs[k - 1], &Poly::x_pow(n)), n, k);
            scalar_diff(n, k, &lhs, self.number(k, n))
        })
    }

    fn binomial_form(&self) -> Option<Counterexample> {
        let mut bases = Vec::with_capacity(self.k_max);
        for k in 1..=self.k_max {
            bases.push(attempt!(appell_basis(&self.g_pow(k, self.n_max), self.n_max), 0, k));
        }
        self.over_nk(0..self.n_max, |n, k| poly_diff(n, k, self.poly(k, n), &bases[k - 1][n]))
    }

    fn multinomial(&self) -> Option<Counterexample> {
        let base = self.table.numbers(1).expect("order 1 present");
        self.over_nk(0..self.n_max, |n, k| scalar_diff(n, k, self.number(k, n), &multinomial_sum(base, k, n)))
    }

    fn expansion(&self) -> Option<Counterexample> {
        let egf = attempt!(weighted_euler_gf(&self.w, self.n_max, 1), 0, 1);
        let g = euler_g(&self.w, self.n_max);
        let mut sum = Series::zero(self.n_max);
        for k in 0..self.n_max {
            let c = attempt!(pairing(&egf, self.poly(1, k)), k, 1) / Q::from_integer(factorial(k as u64));
            sum = &sum + &(&g * &Series::monomial(c, k, self.n_max));
        }
        (0..self.n_max).find_map(|n| scalar_diff(n, 1, egf.coeff(n), sum.coeff(n)))
    }

    fn classical(&self) -> Option<Counterexample> {
        let one = Rational::from_integer(1.into());
        let classical = classical_euler_polys(self.n_max);
        let at_one = attempt!(EulerTable::at_weight(&one, self.n_max, self.k_max), 0, 1);
        self.over_nk(0..self.n_max, |n, k| {
            let lhs = attempt!(self.poly(k, n).try_map(|c| c.eval(&one)), n, k);
            let rhs = if k == 1 { &classical[n] } else { &at_one.polys(k).expect("order in range")[n] };
            differ(n, k, &lhs, rhs, |a, b| a - b)
        })
    }
}
