use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;

/// Coefficient field for series, polynomials and Euler tables.
///
/// Division by zero panics through the `Div` operator; callers that can see a
/// zero divisor check `is_zero` first.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_integer(n: BigInt) -> Self;

    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(BigInt::from(n))
    }

    fn from_usize(n: usize) -> Self {
        Self::from_integer(BigInt::from(n))
    }

    /// Renders the element as a LaTeX math fragment.
    fn to_latex(&self) -> String;
}

impl Field for Rational {
    fn from_integer(n: BigInt) -> Self {
        Rational::from_integer(n)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_latex(&self) -> String {
        super::rational::rational_latex(self)
    }
}

/// Integer power by repeated squaring.
pub fn pow<K: Field>(base: &K, mut exp: u64) -> K {
    let mut acc = K::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * sq.clone();
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}
