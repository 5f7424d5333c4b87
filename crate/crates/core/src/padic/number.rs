use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Multiplier applied to the precision when reporting the valuation of an
/// exact zero.
pub const ZERO_VALUATION_GUARD: i64 = 2;

/// A p-adic valuation: exact, or a lower bound when the value is zero to all
/// known digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Valuation {
    Exact(i64),
    AtLeast(i64),
}

impl Valuation {
    pub fn bound(self) -> i64 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

/// `v_p(n)` for nonzero `n`.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p(r)`; `None` for zero.
pub fn rational_valuation(r: &Rational, p: u64) -> Option<i64> {
    (!r.is_zero()).then(|| int_valuation(r.numer(), p) - int_valuation(r.denom(), p))
}

pub fn is_odd_prime(p: u64) -> bool {
    p > 2 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

fn strip(n: &BigInt, p: u64) -> (i64, BigInt) {
    let v = int_valuation(n, p);
    (v, n / BigInt::from(p).pow(v as u32))
}

/// `p^valuation * unit` with `unit` known modulo `p^precision`.
///
/// When cancellation leaves no known digits the number is `O(p^valuation)`:
/// `precision` is 0 and `unit` is 0. An exact zero is flagged separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicNumber {
    prime: u64,
    valuation: i64,
    unit: BigInt,
    precision: u32,
    exact_zero: bool,
}

impl PadicNumber {
    pub fn zero(prime: u64, precision: u32) -> Self {
        Self { prime, valuation: 0, unit: BigInt::zero(), precision, exact_zero: true }
    }

    fn modulus(&self, digits: u32) -> BigInt {
        BigInt::from(self.prime).pow(digits)
    }

    fn unknown(prime: u64, absolute: i64) -> Self {
        Self { prime, valuation: absolute, unit: BigInt::zero(), precision: 0, exact_zero: false }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact_zero
    }

    pub fn valuation(&self) -> Valuation {
        if self.exact_zero {
            Valuation::AtLeast(self.precision as i64 * ZERO_VALUATION_GUARD)
        } else if self.precision == 0 {
            Valuation::AtLeast(self.valuation)
        } else {
            Valuation::Exact(self.valuation)
        }
    }

    /// Digits known in absolute terms: the value is fixed modulo
    /// `p^absolute_precision`. `None` for an exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        (!self.exact_zero).then_some(self.valuation + self.precision as i64)
    }

    /// Equal modulo the coarser of the two absolute precisions.
    pub fn agrees_with(&self, other: &Self) -> bool {
        assert_eq!(self.prime, other.prime, "primes differ");
        let bound = match (self.absolute_precision(), other.absolute_precision()) {
            (None, None) => return true,
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        let diff = self - other;
        diff.exact_zero || diff.valuation().bound() >= bound
    }

    fn check_prime_matches(&self, other: &Self) {
        assert_eq!(self.prime, other.prime, "p-adic operands with different primes");
    }
}

/// Reduces `r` to `p^v * unit (mod p^precision)`.
pub fn padic_from_rational(r: &Rational, p: u64, precision: u32) -> Result<PadicNumber> {
    check_prime(p)?;
    if precision == 0 {
        return Err(Error::OutOfRange("p-adic precision must be at least 1".into()));
    }
    if r.is_zero() {
        return Ok(PadicNumber::zero(p, precision));
    }
    let (vn, un) = strip(r.numer(), p);
    let (vd, ud) = strip(r.denom(), p);
    let modulus = BigInt::from(p).pow(precision);
    let inv = ud.extended_gcd(&modulus).x;
    Ok(PadicNumber { prime: p, valuation: vn - vd, unit: (un * inv).mod_floor(&modulus), precision, exact_zero: false })
}

impl Add for &PadicNumber {
    type Output = PadicNumber;

    fn add(self, rhs: &PadicNumber) -> PadicNumber {
        self.check_prime_matches(rhs);
        if self.exact_zero {
            return rhs.clone();
        }
        if rhs.exact_zero {
            return self.clone();
        }
        let p = self.prime;
        let v = self.valuation.min(rhs.valuation);
        let absolute = self.absolute_precision().unwrap().min(rhs.absolute_precision().unwrap());
        if absolute <= v {
            return PadicNumber::unknown(p, absolute);
        }
        let digits = (absolute - v) as u32;
        let modulus = self.modulus(digits);
        let lift = |x: &PadicNumber| &x.unit * BigInt::from(p).pow((x.valuation - v) as u32);
        let sum = (lift(self) + lift(rhs)).mod_floor(&modulus);
        if sum.is_zero() {
            return PadicNumber::unknown(p, absolute);
        }
        let (k, unit) = strip(&sum, p);
        let digits = digits - k as u32;
        PadicNumber { prime: p, valuation: v + k, unit: unit.mod_floor(&self.modulus(digits)), precision: digits, exact_zero: false }
    }
}

impl Neg for &PadicNumber {
    type Output = PadicNumber;

    fn neg(self) -> PadicNumber {
        let mut out = self.clone();
        if self.precision > 0 && !self.exact_zero {
            out.unit = (-&self.unit).mod_floor(&self.modulus(self.precision));
        }
        out
    }
}

impl Sub for &PadicNumber {
    type Output = PadicNumber;

    fn sub(self, rhs: &PadicNumber) -> PadicNumber {
        self + &(-rhs)
    }
}

impl Mul for &PadicNumber {
    type Output = PadicNumber;

    fn mul(self, rhs: &PadicNumber) -> PadicNumber {
        self.check_prime_matches(rhs);
        if self.exact_zero || rhs.exact_zero {
            return PadicNumber::zero(self.prime, self.precision.max(rhs.precision));
        }
        let precision = self.precision.min(rhs.precision);
        let valuation = self.valuation + rhs.valuation;
        if precision == 0 {
            return PadicNumber::unknown(self.prime, valuation);
        }
        let unit = (&self.unit * &rhs.unit).mod_floor(&self.modulus(precision));
        PadicNumber { prime: self.prime, valuation, unit, precision, exact_zero: false }
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        if self.exact_zero {
            return f.write_str("0");
        }
        let big_o = format!("O({p}^{})", self.valuation + self.precision as i64);
        if self.precision == 0 {
            return f.write_str(&big_o);
        }
        match self.valuation.cmp(&0) {
            Ordering::Equal => write!(f, "{} + {big_o}", self.unit),
            _ if self.unit.is_one() => write!(f, "{p}^{} + {big_o}", self.valuation),
            _ => write!(f, "{}*{p}^{} + {big_o}", self.unit, self.valuation),
        }
    }
}
