use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::arith::Field;
use crate::error::Result;
use crate::render::{latex_terms, render_terms};

/// Polynomial in `x` over `K`; `coeffs[j]` multiplies `x^j`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct XPolynomial<K> {
    coeffs: Vec<K>,
}

impl<K: Field> XPolynomial<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn x() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn monomial(c: K, j: usize) -> Self {
        let mut coeffs = vec![K::zero(); j];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x^n`.
    pub fn x_pow(n: usize) -> Self {
        Self::monomial(K::one(), n)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    /// Coefficient of `x^j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> K {
        self.coeffs.get(j).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.clone() * K::from_usize(j))
                .collect(),
        )
    }

    pub fn eval(&self, at: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// `self(x + y)`.
    pub fn shift(&self, y: &K) -> Self {
        self.compose(&Self::new(vec![y.clone(), K::one()]))
    }

    pub fn map<L: Field>(&self, f: impl FnMut(&K) -> L) -> XPolynomial<L> {
        XPolynomial::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<L: Field>(&self, f: impl FnMut(&K) -> Result<L>) -> Result<XPolynomial<L>> {
        Ok(XPolynomial::new(self.coeffs.iter().map(f).collect::<Result<_>>()?))
    }

    pub fn to_latex(&self) -> String {
        latex_terms(&self.coeffs, "x")
    }
}

/// `j! / (j - k)!`.
pub(crate) fn falling(j: usize, k: usize) -> BigInt {
    ((j - k + 1)..=j).fold(BigInt::one(), |acc, i| acc * i)
}

impl<K: Field> Add for &XPolynomial<K> {
    type Output = XPolynomial<K>;

    fn add(self, rhs: &XPolynomial<K>) -> XPolynomial<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPolynomial::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl<K: Field> Sub for &XPolynomial<K> {
    type Output = XPolynomial<K>;

    fn sub(self, rhs: &XPolynomial<K>) -> XPolynomial<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPolynomial::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl<K: Field> Neg for &XPolynomial<K> {
    type Output = XPolynomial<K>;

    fn neg(self) -> XPolynomial<K> {
        XPolynomial { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<K: Field> Mul for &XPolynomial<K> {
    type Output = XPolynomial<K>;

    fn mul(self, rhs: &XPolynomial<K>) -> XPolynomial<K> {
        if self.is_zero() || rhs.is_zero() {
            return XPolynomial::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        XPolynomial::new(out)
    }
}

impl<K: Field> fmt::Display for XPolynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.coeffs.iter().enumerate(), "x"))
    }
}

impl<K: Field> fmt::Debug for XPolynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON form: array of coefficient strings, ascending powers of `x`.
impl<K: Field> Serialize for XPolynomial<K> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}
