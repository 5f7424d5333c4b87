//! Command-line front end: tables, the identity suite, `.uid` checking and
//! p-adic experiments.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use umbral::arith::{parse_rational, Rational};
use umbral::dsl::{check_file_up_to, LineVerdict, VerdictStatus};
use umbral::euler::{verify_paper_suite, CheckStatus, EulerTable, Report};
use umbral::padic::{check_weight, convergence_report, shift_identity_check};
use umbral::XPolynomial;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Paper,
}

#[derive(Debug, Parser)]
#[command(name = "umbral", version, about = "Exact weighted Euler tables, identity checks and p-adic sums")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, env = "UMBRAL_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct TableArgs {
    /// Rows n = 0 .. max-n - 1.
    #[arg(long)]
    pub max_n: usize,

    /// Substitute a rational weight; symbolic in w otherwise.
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub w: Option<Rational>,

    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub order: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weighted Euler numbers of the given order.
    Numbers(TableArgs),
    /// Weighted Euler polynomials of the given order.
    Polys(TableArgs),
    /// Run the identity suite for n < max-n and orders up to max-k.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_k: usize,
    },
    /// Check every identity in a `.uid` file.
    Check {
        file: PathBuf,
        /// Clip every range to end at this value.
        #[arg(long)]
        max_n: Option<u64>,
    },
    /// Truncated fermionic sums and their convergence.
    Padic {
        /// Odd prime.
        #[arg(long)]
        p: u64,
        /// Weight with v_p(1 - w) >= 1.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        w: Rational,
        /// Integrand coefficients, constant term first, comma separated.
        #[arg(long, value_parser = poly_arg, allow_hyphen_values = true)]
        poly: XPolynomial<Rational>,
        #[arg(long)]
        levels: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        prec: u32,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn poly_arg(s: &str) -> Result<XPolynomial<Rational>, String> {
    s.split(',').map(rational_arg).collect::<Result<Vec<_>, _>>().map(XPolynomial::new)
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<umbral::Error> for Failure {
    fn from(e: umbral::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

struct Output {
    body: String,
    code: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Self { body, code: EXIT_OK }
    }
}

fn json_body(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Parses `args` (program name first), runs the command and writes its
/// output. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let out = match execute(&cli) {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_RUNTIME;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout.write_all(out.body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_RUNTIME;
    }
    out.code
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Numbers(args) => table(args, cli.format, false),
        Command::Polys(args) => table(args, cli.format, true),
        Command::Verify { suite: Suite::Paper, max_n, max_k } => verify(*max_n, *max_k, cli.format),
        Command::Check { file, max_n } => check(file, *max_n, cli.format),
        Command::Padic { p, w, poly, levels, prec } => padic(*p, w, poly, *levels, *prec, cli.format),
    }
}

fn rows<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().enumerate().map(|(n, v)| format!("{n}: {v}\n")).collect()
}

fn json_rows<K: umbral::arith::Field>(values: &[K], polys: Option<&[XPolynomial<K>]>) -> Vec<Value> {
    values
        .iter()
        .enumerate()
        .map(|(n, e)| match polys {
            None => json!({ "n": n, "value": e.to_string() }),
            Some(ps) => json!({
                "n": n,
                "value": ps[n].to_string(),
                "coefficients": ps[n].coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
            }),
        })
        .collect()
}

fn render_table<K: umbral::arith::Field>(
    t: &EulerTable<K>,
    order: usize,
    weight: &str,
    format: Format,
    polys: bool,
) -> Result<String, Failure> {
    let numbers = t.numbers(order)?;
    let ps = t.polys(order)?;
    Ok(match (format, polys) {
        (Format::Text, false) => rows(numbers),
        (Format::Text, true) => rows(ps),
        (Format::Latex, false) => t.latex_numbers(order)?,
        (Format::Latex, true) => t.latex_polys(order)?,
        (Format::Json, _) => json_body(&json!({
            "table": if polys { "polys" } else { "numbers" },
            "order": order,
            "w": weight,
            "rows": json_rows(numbers, polys.then_some(ps)),
        })),
    })
}

fn table(args: &TableArgs, format: Format, polys: bool) -> Result<Output, Failure> {
    let order = args.order as usize;
    let symbolic = EulerTable::symbolic(args.max_n, order)?;
    let body = match &args.w {
        None => render_table(&symbolic, order, "w", format, polys)?,
        Some(w) => render_table(&symbolic.evaluate(w)?, order, &w.to_string(), format, polys)?,
    };
    Ok(Output::ok(body))
}

fn verify_latex(report: &Report) -> String {
    report
        .results
        .iter()
        .map(|r| match (&r.status, &r.counterexample) {
            (CheckStatus::Fail, Some(c)) => format!("{} & FAIL & $n = {}$, $k = {}$ \\\\\n", r.label, c.n, c.k),
            (CheckStatus::Fail, None) => format!("{} & FAIL & \\\\\n", r.label),
            (CheckStatus::Pass, _) => format!("{} & PASS & \\\\\n", r.label),
        })
        .collect()
}

fn verify(max_n: usize, max_k: usize, format: Format) -> Result<Output, Failure> {
    if max_n < 2 || max_k < 1 {
        return Err(Failure::Usage("verify needs --max-n >= 2 and --max-k >= 1".into()));
    }
    let report = verify_paper_suite(max_n, max_k)?;
    let body = match format {
        Format::Text => report.to_text(),
        Format::Json => json_body(&report.to_json()),
        Format::Latex => verify_latex(&report),
    };
    Ok(Output { body, code: if report.all_pass() { EXIT_OK } else { EXIT_VIOLATION } })
}

fn check_text(results: &[LineVerdict]) -> String {
    let mut out = String::new();
    for r in results {
        let _ = writeln!(out, "{:>4}: {:<5} {}", r.line, r.verdict.status, r.source);
        if r.verdict.status != VerdictStatus::Pass {
            let _ = writeln!(out, "      {}", r.verdict.summary());
        }
    }
    let count = |s: VerdictStatus| results.iter().filter(|r| r.verdict.status == s).count();
    let _ = writeln!(
        out,
        "{} identities: {} pass, {} fail, {} error",
        results.len(),
        count(VerdictStatus::Pass),
        count(VerdictStatus::Fail),
        count(VerdictStatus::Error)
    );
    out
}

fn check(file: &PathBuf, cap: Option<u64>, format: Format) -> Result<Output, Failure> {
    if format == Format::Latex {
        return Err(Failure::Usage("check supports text and json output only".into()));
    }
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
    let results = check_file_up_to(&text, cap);
    let parse_error = results.iter().any(|r| {
        r.verdict.error.as_ref().is_some_and(|e| {
            matches!(
                e.kind,
                umbral::dsl::DslErrorKind::Lexical
                    | umbral::dsl::DslErrorKind::Syntax
                    | umbral::dsl::DslErrorKind::Unbound
                    | umbral::dsl::DslErrorKind::Index
            )
        })
    });
    let code = if parse_error {
        EXIT_USAGE
    } else if results.iter().any(|r| r.verdict.status == VerdictStatus::Error) {
        EXIT_RUNTIME
    } else if results.iter().any(|r| r.verdict.status == VerdictStatus::Fail) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    let body = match format {
        Format::Json => json_body(&Value::Array(results.iter().map(LineVerdict::to_json).collect())),
        _ => check_text(&results),
    };
    Ok(Output { body, code })
}

/// Long exact values are shortened for the text table; JSON keeps them whole.
fn abbreviate(s: &str) -> String {
    const KEEP: usize = 16;
    if s.len() <= 2 * KEEP + 8 {
        return s.to_string();
    }
    format!("{}...{} ({} chars)", &s[..KEEP], &s[s.len() - KEEP..], s.len())
}

fn padic(p: u64, w: &Rational, f: &XPolynomial<Rational>, levels: u32, prec: u32, format: Format) -> Result<Output, Failure> {
    check_weight(w, p).map_err(|e| Failure::Usage(e.to_string()))?;
    let conv = convergence_report(f, w, p, levels, prec)?;
    let shift = shift_identity_check(f, w, p, levels, prec)?;
    let code = if shift.exact_holds { EXIT_OK } else { EXIT_VIOLATION };
    let body = match format {
        Format::Json => json_body(&json!({
            "prime": p,
            "weight": w.to_string(),
            "poly": f.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "levels": levels,
            "precision": prec,
            "convergence": conv,
            "shift_identity": shift,
        })),
        Format::Latex => conv
            .rows
            .iter()
            .zip(&shift.rows)
            .map(|(c, s)| format!("{} & {} & {} \\\\\n", c.level, c.valuation, s.valuation))
            .collect(),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "p = {p}, w = {w}, f(a) = {}", f.to_string().replace('x', "a"));
            let _ = writeln!(out, "exact integral: {}", conv.target);
            let _ = writeln!(out, "{:>5}  {:<48}  {}", "level", "partial sum", "valuation");
            for r in &conv.rows {
                let _ = writeln!(out, "{:>5}  {:<48}  {}", r.level, abbreviate(&r.value.to_string()), r.valuation);
            }
            let yes_no = |b: bool| if b { "yes" } else { "no" };
            let _ = writeln!(out, "valuations strictly increasing: {}", yes_no(conv.strictly_increasing));
            let _ = writeln!(
                out,
                "shift identity: w*I(f(a+1)) + I(f) = {}, 2*f(0) = {}: {}",
                shift.exact_lhs,
                shift.exact_rhs,
                if shift.exact_holds { "holds" } else { "FAILS" }
            );
            let _ = writeln!(out, "{:>5}  {:<48}  {}", "level", "deviation", "valuation");
            for r in &shift.rows {
                let _ = writeln!(out, "{:>5}  {:<48}  {}", r.level, abbreviate(&r.value.to_string()), r.valuation);
            }
            let _ = writeln!(out, "valuations strictly increasing: {}", yes_no(shift.strictly_increasing));
            out
        }
    };
    Ok(Output { body, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abbreviation() {
        assert_eq!(abbreviate("12345"), "12345");
        let long = "9".repeat(100);
        assert_eq!(abbreviate(&long), format!("{}...{} (100 chars)", "9".repeat(16), "9".repeat(16)));
    }

    #[test]
    fn poly_arguments() {
        let p = poly_arg("1/2, 0,3").unwrap();
        assert_eq!(p.coeffs().len(), 3);
        assert!(poly_arg("1,a").is_err());
    }
}
