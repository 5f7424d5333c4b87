//! Dense univariate polynomials in the weight `w` over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Polynomial in `w`; `coeffs[i]` is the coefficient of `w^i`. Trailing
/// zeros are always stripped, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WPolynomial {
    coeffs: Vec<Rational>,
}

impl WPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `w`.
    pub fn w() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at + c)
    }

    /// Scales to leading coefficient one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[d].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + d] * &lc_inv;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        rem.truncate(d);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        if divisor.is_one() {
            return self.clone();
        }
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Splits `self = content * primitive` where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn content_primitive(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let (g, prim) = primitive(ints);
        (Rational::new(g, lcm), prim)
    }

    fn from_int_coeffs(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| Rational::from_integer(x.clone())).collect())
    }

    /// Monic gcd in Q[w]; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return Self::one();
        }
        let (_, a) = self.content_primitive();
        let (_, b) = other.content_primitive();
        let g = int_gcd(a, b);
        Self::from_int_coeffs(&g).monic()
    }

    /// Renders with descending powers, e.g. `w^2 - 4*w + 1`.
    pub fn fmt_descending(&self) -> String {
        render(self.coeffs.iter().enumerate().rev())
    }

    /// Renders with ascending powers, e.g. `1 + w`.
    pub fn fmt_ascending(&self) -> String {
        render(self.coeffs.iter().enumerate())
    }

    pub fn to_latex_descending(&self) -> String {
        self.fmt_descending().replace('*', "")
    }
}

/// Divides out the integer content and makes the leading coefficient
/// positive. Returns `(signed content, primitive part)`.
fn primitive(mut c: Vec<BigInt>) -> (BigInt, Vec<BigInt>) {
    let mut g = c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return (g, c);
    }
    if c.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    for x in c.iter_mut() {
        *x = &*x / &g;
    }
    (g, c)
}

fn strip(c: &mut Vec<BigInt>) {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
}

/// Pseudo-remainder of `a` by `b` in Z[w].
fn int_prem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    while a.len() > db {
        let la = a.last().unwrap().clone();
        let shift = a.len() - 1 - db;
        for x in a.iter_mut() {
            *x *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            a[shift + j] -= &la * bj;
        }
        strip(&mut a);
    }
    a
}

/// Primitive polynomial remainder sequence; inputs must be primitive.
fn int_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = int_prem(a, &b);
        a = b;
        b = primitive(r).1;
    }
    primitive(a).1
}

fn render<'a>(terms: impl Iterator<Item = (usize, &'a Rational)>) -> String {
    let mut out = String::new();
    for (i, c) in terms {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "w".to_string(),
            _ => format!("w^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for WPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_ascending())
    }
}

impl fmt::Debug for WPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WPolynomial({})", self.fmt_ascending())
    }
}

impl Add for &WPolynomial {
    type Output = WPolynomial;

    fn add(self, rhs: &WPolynomial) -> WPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut c = long.coeffs.clone();
        for (a, b) in c.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        WPolynomial::new(c)
    }
}

impl Sub for &WPolynomial {
    type Output = WPolynomial;

    fn sub(self, rhs: &WPolynomial) -> WPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &WPolynomial {
    type Output = WPolynomial;

    fn neg(self) -> WPolynomial {
        WPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &WPolynomial {
    type Output = WPolynomial;

    fn mul(self, rhs: &WPolynomial) -> WPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return WPolynomial::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        WPolynomial::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn p(c: &[i64]) -> WPolynomial {
        WPolynomial::from_ints(c)
    }

    #[test]
    fn strips_trailing_zeros() {
        assert_eq!(p(&[1, 0, 0]).degree(), Some(0));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn gcd_cancels_common_factor() {
        // (w^2 - 1, w + 1) -> w + 1
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[1, 1])), p(&[1, 1]));
        // (w+1)^2 (w-2), (w+1)(w+3)
        let a = &(&p(&[1, 1]) * &p(&[1, 1])) * &p(&[-2, 1]);
        let b = &p(&[1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[2, 1])), WPolynomial::one());
    }

    #[test]
    fn gcd_with_rational_coefficients_is_monic() {
        let a = WPolynomial::new(vec![rat(1, 2), rat(1, 2)]);
        let b = WPolynomial::new(vec![rat(-3, 7), rat(0, 1), rat(3, 7)]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn division() {
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn content_split() {
        let poly = WPolynomial::new(vec![rat(-2, 3), rat(4, 3)]);
        let (c, prim) = poly.content_primitive();
        assert_eq!(c, rat(2, 3));
        assert_eq!(prim, vec![BigInt::from(-1), BigInt::from(2)]);
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[1, -4, 1]).fmt_descending(), "w^2 - 4*w + 1");
        assert_eq!(p(&[1, 1]).fmt_ascending(), "1 + w");
        assert_eq!(p(&[0, -1]).fmt_ascending(), "-w");
        assert_eq!(WPolynomial::zero().to_string(), "0");
    }
}
