//! The rational-function field Q(w).
//!
//! Every value is kept as `num / den` with `den` monic and
//! `gcd(num, den) = 1`, so derived `PartialEq` is field equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::combinat::binomial;
use super::field::Field;
use super::rational::Rational;
use super::wpoly::WPolynomial;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WRational {
    num: WPolynomial,
    den: WPolynomial,
}

impl WRational {
    /// Reduces `num / den` to canonical form.
    pub fn new(num: WPolynomial, den: WPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = (num.exact_div(&g), den.exact_div(&g));
        let lc = den.leading().expect("nonzero").clone();
        if lc.is_one() {
            Ok(Self { num, den })
        } else {
            let inv = lc.recip();
            Ok(Self { num: num.scale(&inv), den: den.scale(&inv) })
        }
    }

    pub fn from_poly(num: WPolynomial) -> Self {
        Self { num, den: WPolynomial::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(WPolynomial::constant(c))
    }

    pub fn w() -> Self {
        Self::from_poly(WPolynomial::w())
    }

    pub fn numer(&self) -> &WPolynomial {
        &self.num
    }

    pub fn denom(&self) -> &WPolynomial {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.leading().expect("nonzero").recip();
        Ok(Self { num: self.den.scale(&lc), den: self.num.scale(&lc) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Substitutes `w = at`.
    pub fn eval(&self, at: &Rational) -> Result<Rational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole { at: at.to_string(), denominator: self.den.fmt_ascending() });
        }
        Ok(self.num.eval(at) / d)
    }

    /// `Some(k)` when the denominator is exactly `(1 + w)^k`, `k >= 1`.
    fn one_plus_w_power(&self) -> Option<usize> {
        let k = self.den.degree()?;
        if k == 0 {
            return None;
        }
        let matches = self
            .den
            .coeffs()
            .iter()
            .enumerate()
            .all(|(i, c)| c.denom().is_one() && *c.numer() == binomial(k as u64, i as i64));
        matches.then_some(k)
    }

    fn den_is_w_power(&self) -> Option<usize> {
        let k = self.den.degree()?;
        (k > 0 && self.den.coeffs()[..k].iter().all(Zero::is_zero)).then_some(k)
    }

    /// Splits the numerator into `(sign, |content|, power of w, rest)` with
    /// `rest` primitive, positive-leading and coprime to `w`.
    fn numerator_factors(&self) -> (bool, Rational, usize, WPolynomial) {
        let (content, prim) = self.num.content_primitive();
        let shift = prim.iter().take_while(|c| c.is_zero()).count();
        let rest = WPolynomial::new(prim[shift..].iter().map(|c| Rational::from_integer(c.clone())).collect());
        (content.is_negative(), content.abs(), shift, rest)
    }

    fn render(&self, latex: bool) -> String {
        if self.num.is_zero() {
            return "0".to_string();
        }
        let (negative, mag, shift, rest) = self.numerator_factors();
        let has_den = !self.den.is_one();
        let mut factors: Vec<String> = Vec::new();
        let rest_trivial = rest.is_one();
        if !mag.is_one() || (shift == 0 && rest_trivial) {
            factors.push(if latex { mag.to_latex() } else { mag.to_string() });
        }
        match shift {
            0 => {}
            1 => factors.push("w".into()),
            k => factors.push(if latex { format!("w^{{{k}}}") } else { format!("w^{k}") }),
        }
        if !rest_trivial {
            let body = if latex { rest.to_latex_descending() } else { rest.fmt_descending() };
            let alone = factors.is_empty() && !negative && (!has_den || latex);
            factors.push(if alone { body } else { format!("({body})") });
        }
        let sep = if latex { " " } else { "*" };
        let numer = factors.join(sep);
        let sign = if negative { "-" } else { "" };
        if !has_den {
            return format!("{sign}{numer}");
        }
        let den = if let Some(k) = self.one_plus_w_power() {
            match (k, latex) {
                (1, false) => "(1 + w)".to_string(),
                (1, true) => "1 + w".to_string(),
                (k, false) => format!("(1 + w)^{k}"),
                (k, true) => format!("(1 + w)^{{{k}}}"),
            }
        } else if let Some(k) = self.den_is_w_power() {
            match (k, latex) {
                (1, _) => "w".to_string(),
                (k, false) => format!("w^{k}"),
                (k, true) => format!("w^{{{k}}}"),
            }
        } else if latex {
            self.den.fmt_ascending().replace('*', "")
        } else {
            format!("({})", self.den.fmt_ascending())
        };
        if latex {
            format!("{sign}\\frac{{{numer}}}{{{den}}}")
        } else {
            format!("{sign}{numer}/{den}")
        }
    }
}

impl Zero for WRational {
    fn zero() -> Self {
        Self { num: WPolynomial::zero(), den: WPolynomial::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for WRational {
    fn one() -> Self {
        Self { num: WPolynomial::one(), den: WPolynomial::one() }
    }
}

impl Field for WRational {
    fn from_integer(n: BigInt) -> Self {
        Self::constant(Rational::from_integer(n))
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }

    fn to_latex(&self) -> String {
        self.render(true)
    }
}

impl From<Rational> for WRational {
    fn from(r: Rational) -> Self {
        Self::constant(r)
    }
}

impl From<WPolynomial> for WRational {
    fn from(p: WPolynomial) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for WRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for WRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WRational({})", self.render(false))
    }
}

impl Add for &WRational {
    type Output = WRational;

    fn add(self, rhs: &WRational) -> WRational {
        if self.num.is_zero() {
            return rhs.clone();
        }
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return WRational::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return WRational::new(num, self.den.clone()).expect("nonzero denominator");
        }
        // Henrici: only the shared factor of the denominators can cancel.
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return WRational { num, den: &self.den * &rhs.den };
        }
        let b = self.den.exact_div(&g);
        let d = rhs.den.exact_div(&g);
        let t = &(&self.num * &d) + &(&rhs.num * &b);
        if t.is_zero() {
            return WRational::zero();
        }
        let g2 = t.gcd(&g);
        WRational { num: t.exact_div(&g2), den: &b * &rhs.den.exact_div(&g2) }
    }
}

impl Neg for &WRational {
    type Output = WRational;

    fn neg(self) -> WRational {
        WRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &WRational {
    type Output = WRational;

    fn sub(self, rhs: &WRational) -> WRational {
        self + &(-rhs)
    }
}

impl Mul for &WRational {
    type Output = WRational;

    fn mul(self, rhs: &WRational) -> WRational {
        if self.num.is_zero() || rhs.num.is_zero() {
            return WRational::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return WRational::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        WRational { num, den }
    }
}

impl Div for &WRational {
    type Output = WRational;

    /// Panics on a zero divisor; see [`WRational::checked_div`].
    fn div(self, rhs: &WRational) -> WRational {
        self.checked_div(rhs).expect("division by zero in Q(w)")
    }
}

macro_rules! by_value {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for WRational {
            type Output = WRational;
            fn $m(self, rhs: WRational) -> WRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}
by_value!(Add add, Sub sub, Mul mul, Div div);

impl Neg for WRational {
    type Output = WRational;

    fn neg(self) -> WRational {
        WRational { num: -&self.num, den: self.den }
    }
}

impl FromStr for WRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = TextParser { src: s.as_bytes(), pos: 0 };
        let value = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(value)
    }
}

impl Serialize for WRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for WRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Recursive-descent reader for the rendered syntax:
/// integers, `w`, `+ - * / ^`, parentheses.
struct TextParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TextParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<WRational> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<WRational> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' { &acc * &rhs } else { acc.checked_div(&rhs)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<WRational> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<WRational> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u64 = e.try_into().map_err(|_| self.error("exponent out of range"))?;
            return Ok(super::field::pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<WRational> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(WRational::w())
            }
            Some(c) if c.is_ascii_digit() => Ok(WRational::from_integer(self.integer()?)),
            _ => Err(self.error("expected number, `w` or `(`")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits"))
    }
}
