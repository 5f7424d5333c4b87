//! Truncated formal power series.
//!
//! A [`Series`] stores the ordinary coefficients `c_0 .. c_{N-1}` of
//! `f(t) = sum c_k t^k + O(t^N)`. The umbral (exponential) coefficient
//! `a_k` with `f = sum a_k t^k / k!` is `k! * c_k`; that conversion lives in
//! [`Series::umbral_coeff`] and [`Series::from_umbral`] and nowhere else.
//!
//! Binary operations truncate to the smaller precision of their operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{factorial, Field};
use crate::error::{Error, Result};
use crate::render::render_terms;

#[derive(Clone, PartialEq, Eq)]
pub struct Series<K> {
    coeffs: Vec<K>,
}

/// Order of a series: index of the first nonzero known coefficient, or
/// `AtLeast(N)` when every known coefficient vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    AtLeast(usize),
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

impl<K: Field> Series<K> {
    /// Panics if `coeffs` is empty: a series knows at least one coefficient.
    pub fn new(coeffs: Vec<K>) -> Self {
        assert!(!coeffs.is_empty(), "series precision must be at least 1");
        Self { coeffs }
    }

    pub fn zero(precision: usize) -> Self {
        Self::new(vec![K::zero(); precision])
    }

    pub fn constant(c: K, precision: usize) -> Self {
        Self::monomial(c, 0, precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::constant(K::one(), precision)
    }

    /// The series `t`.
    pub fn t(precision: usize) -> Self {
        Self::monomial(K::one(), 1, precision)
    }

    /// `c * t^k + O(t^precision)`; the term is dropped if `k >= precision`.
    pub fn monomial(c: K, k: usize, precision: usize) -> Self {
        let mut s = Self::zero(precision);
        if k < precision {
            s.coeffs[k] = c;
        }
        s
    }

    /// `e^{y t}` to the given precision: coefficients `y^k / k!`.
    pub fn exp(y: &K, precision: usize) -> Self {
        let mut coeffs = Vec::with_capacity(precision);
        let mut term = K::one();
        for k in 0..precision {
            if k > 0 {
                term = term * y.clone() / K::from_usize(k);
            }
            coeffs.push(term.clone());
        }
        Self::new(coeffs)
    }

    /// Builds a series from umbral coefficients `a_k = <f | x^k>`.
    pub fn from_umbral(a: Vec<K>) -> Self {
        let coeffs = a
            .into_iter()
            .enumerate()
            .map(|(k, a)| a / K::from_integer(factorial(k as u64)))
            .collect();
        Self::new(coeffs)
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    /// Ordinary coefficient of `t^k`; panics beyond the precision.
    pub fn coeff(&self, k: usize) -> &K {
        &self.coeffs[k]
    }

    /// Umbral coefficient `a_k = k! c_k`.
    pub fn umbral_coeff(&self, k: usize) -> K {
        self.coeffs[k].clone() * K::from_integer(factorial(k as u64))
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let n = precision.min(self.precision());
        Self::new(self.coeffs[..n].to_vec())
    }

    pub fn order(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(k) => Order::Finite(k),
            None => Order::AtLeast(self.precision()),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// `self^k` by repeated multiplication; `k = 0` gives one.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.precision());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse via `g_0 = 1/c_0`,
    /// `g_n = -(1/c_0) * sum_{k=1..n} c_k g_{n-k}`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = K::one() / c0.clone();
        let n = self.precision();
        let mut g: Vec<K> = Vec::with_capacity(n);
        g.push(inv0.clone());
        for m in 1..n {
            let mut acc = K::zero();
            for k in 1..=m {
                let ck = &self.coeffs[k];
                if ck.is_zero() {
                    continue;
                }
                acc = acc + ck.clone() * g[m - k].clone();
            }
            g.push(-(inv0.clone() * acc));
        }
        Ok(Self::new(g))
    }

    /// `self(inner(t))` by Horner's rule, truncated to the common precision.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NotDelta);
        }
        let n = self.precision().min(inner.precision());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n - 1].clone(), n);
        for k in (0..n - 1).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }

    /// Compositional inverse by coefficient-wise triangular solve: with
    /// `b_1 = 1/a_1`, each `b_n` is fixed by requiring `[t^n] f(b(t)) = 0`.
    pub fn reverse(&self) -> Result<Self> {
        let n = self.precision();
        if n < 2 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::NotReversible);
        }
        let a1 = self.coeffs[1].clone();
        let mut b = Self::zero(n);
        b.coeffs[1] = K::one() / a1.clone();
        for m in 2..n {
            // with b_m = 0, [t^m] f(b) holds everything except a_1 b_m
            let partial = self.truncate(m + 1).compose(&b.truncate(m + 1))?;
            let rest = partial.coeffs[m].clone();
            b.coeffs[m] = -(rest / a1.clone());
        }
        Ok(b)
    }

    /// Term-wise `d/dt`; the result knows one coefficient fewer.
    pub fn derivative(&self) -> Result<Self> {
        let n = self.precision();
        if n < 2 {
            return Err(Error::InsufficientPrecision { required: 2, available: n });
        }
        Ok(Self::new(
            (1..n).map(|k| self.coeffs[k].clone() * K::from_usize(k)).collect(),
        ))
    }

    pub fn map<L: Field>(&self, f: impl FnMut(&K) -> L) -> Series<L> {
        Series::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<L: Field>(&self, f: impl FnMut(&K) -> Result<L>) -> Result<Series<L>> {
        Ok(Series::new(self.coeffs.iter().map(f).collect::<Result<_>>()?))
    }
}

impl<K: Field> Add for &Series<K> {
    type Output = Series<K>;

    fn add(self, rhs: &Series<K>) -> Series<K> {
        Series::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

impl<K: Field> Sub for &Series<K> {
    type Output = Series<K>;

    fn sub(self, rhs: &Series<K>) -> Series<K> {
        Series::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }
}

impl<K: Field> Neg for &Series<K> {
    type Output = Series<K>;

    fn neg(self) -> Series<K> {
        Series::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }
}

impl<K: Field> Mul for &Series<K> {
    type Output = Series<K>;

    /// Cauchy product.
    fn mul(self, rhs: &Series<K>) -> Series<K> {
        let n = self.precision().min(rhs.precision());
        let mut out = vec![K::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series::new(out)
    }
}

impl<K: Field> fmt::Display for Series<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = render_terms(self.coeffs.iter().enumerate(), "t");
        let n = self.precision();
        let tail = if n == 1 { "O(t)".to_string() } else { format!("O(t^{n})") };
        if body == "0" {
            write!(f, "{tail}")
        } else {
            write!(f, "{body} + {tail}")
        }
    }
}

impl<K: Field> fmt::Debug for Series<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON form: array of exact coefficient strings, length = precision.
impl<K: Field> Serialize for Series<K> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

impl<'de, K: Field + FromStr> Deserialize<'de> for Series<K>
where
    K::Err: fmt::Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        if raw.is_empty() {
            return Err(serde::de::Error::custom("series needs at least one coefficient"));
        }
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<K>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Series::new(coeffs))
    }
}

/// `(w e^t + 1) / 2` to the given precision: the series whose inverse
/// generates the weighted Euler numbers.
pub fn euler_g<K: Field>(w: &K, precision: usize) -> Series<K> {
    let half = K::one() / K::from_i64(2);
    let e = Series::exp(&K::one(), precision).scale(&(w.clone() * half.clone()));
    let mut g = e;
    g.coeffs[0] = g.coeffs[0].clone() + half;
    g
}

/// `sum_k c_k` for an integer sequence helper used by tests.
#[doc(hidden)]
pub fn ints<K: Field>(c: &[i64]) -> Series<K> {
    Series::new(c.iter().map(|&x| K::from_integer(BigInt::from(x))).collect())
}

#[cfg(test)]
mod tests {
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    use super::*;
    use crate::arith::{int, rat, Rational, WRational};

    type S = Series<Rational>;

    #[test]
    fn order_of_series() {
        assert_eq!(ints::<Rational>(&[0, 0, 1, 1, 0, 0]).order(), Order::Finite(2));
        assert_eq!(S::zero(4).order(), Order::AtLeast(4));
        assert_eq!(S::zero(4).order().to_string(), ">=4");
        let g = euler_g(&WRational::w(), 6);
        assert_eq!(g.order(), Order::Finite(0));
        assert_eq!(g.coeff(0), &"(1 + w)/2".parse::<WRational>().unwrap());
    }

    #[test]
    fn products() {
        let p = &ints::<Rational>(&[1, 1, 0, 0]) * &ints(&[1, -1, 0, 0]);
        assert_eq!(p, ints(&[1, 0, -1, 0]));
        let q = &S::monomial(int(1), 2, 8) * &S::monomial(int(1), 3, 8);
        assert_eq!(q, S::monomial(int(1), 5, 8));
        assert_eq!(q.order(), Order::Finite(5));
    }

    #[test]
    fn product_truncates_to_smaller_precision() {
        let p = &S::one(3) * &S::one(7);
        assert_eq!(p.precision(), 3);
        assert_eq!((&S::one(3) + &S::t(5)).precision(), 3);
    }

    #[test]
    fn weighted_euler_series_inverse() {
        let g = euler_g(&WRational::w(), 8);
        let e = g.inverse().unwrap();
        assert_eq!(e.coeff(0).to_string(), "2/(1 + w)");
        assert_eq!(e.coeff(1).to_string(), "-2*w/(1 + w)^2");
        assert_eq!(&g * &e, Series::one(8));
    }

    #[test]
    fn geometric_inverse() {
        let inv = ints::<Rational>(&[1, -1, 0, 0, 0, 0]).inverse().unwrap();
        assert_eq!(inv, ints(&[1, 1, 1, 1, 1, 1]));
        let sq = &ints::<Rational>(&[1, 1, 0, 0]) * &ints(&[1, 1, 0, 0]);
        assert_eq!(sq.inverse().unwrap(), ints(&[1, -2, 3, -4]));
    }

    #[test]
    fn inverse_of_delta_series_fails() {
        let err = S::t(4).inverse().unwrap_err();
        assert_eq!(err.to_string(), "not invertible (delta or higher order)");
    }

    #[test]
    fn composition() {
        let geo = ints::<Rational>(&[1, 1, 1, 1, 1, 1, 1]);
        let t2 = S::monomial(int(1), 2, 7);
        assert_eq!(geo.compose(&t2).unwrap(), ints(&[1, 0, 1, 0, 1, 0, 1]));
        let g = ints::<Rational>(&[3, -1, 4, 1, 5]);
        assert_eq!(g.compose(&S::t(5)).unwrap(), g);
        let lin = ints::<Rational>(&[0, 1, 1, 0]).compose(&ints(&[0, 2, 0, 0])).unwrap();
        assert_eq!(lin, ints(&[0, 2, 4, 0]));
        let err = g.compose(&S::one(5)).unwrap_err();
        assert_eq!(err.to_string(), "composition requires a delta series");
    }

    /// Signed Catalan numbers from the convolution recurrence, independent
    /// of reversion.
    fn signed_catalan(n: usize) -> Vec<Rational> {
        let mut cat: Vec<i64> = vec![1];
        for m in 0..n {
            cat.push((0..=m).map(|i| cat[i] * cat[m - i]).sum());
        }
        let mut out = vec![int(0)];
        for k in 1..n {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out.push(int(sign * cat[k - 1]));
        }
        out
    }

    #[test]
    fn reversion_of_t_plus_t_squared() {
        assert_eq!(S::t(6).reverse().unwrap(), S::t(6));
        let f = ints::<Rational>(&[0, 1, 1, 0, 0, 0]);
        let fbar = f.reverse().unwrap();
        assert_eq!(fbar, S::new(signed_catalan(6)));
        assert_eq!(fbar, ints(&[0, 1, -1, 2, -5, 14]));
    }

    #[test]
    fn reversion_round_trip() {
        let f = ints::<Rational>(&[0, 1, 3, 1, 0, 0, 0, 0, 0, 0]);
        let fbar = f.reverse().unwrap();
        assert_eq!(f.compose(&fbar).unwrap(), S::t(10));
        assert_eq!(fbar.compose(&f).unwrap(), S::t(10));
    }

    #[test]
    fn reversion_rejects_non_delta() {
        for f in [ints::<Rational>(&[1, 1, 0]), ints(&[0, 0, 1])] {
            assert_eq!(f.reverse().unwrap_err(), Error::NotReversible);
        }
    }

    #[test]
    fn derivatives() {
        assert_eq!(S::monomial(int(1), 3, 5).derivative().unwrap(), S::monomial(int(3), 2, 4));
        assert_eq!(S::constant(int(7), 4).derivative().unwrap(), S::zero(3));
        assert!(S::one(1).derivative().is_err());

        let n = 7;
        let d = euler_g(&WRational::w(), n).derivative().unwrap();
        let half_w = &WRational::w() / &WRational::from_i64(2);
        for k in 0..n - 1 {
            let expect = &half_w / &WRational::from_integer(factorial(k as u64));
            assert_eq!(d.coeff(k), &expect);
        }
    }

    #[test]
    fn exponentials() {
        assert_eq!(S::exp(&int(0), 5), S::one(5));
        assert_eq!(S::exp(&int(1), 4), S::new(vec![int(1), int(1), rat(1, 2), rat(1, 6)]));
        assert_eq!(S::exp(&int(2), 4), S::new(vec![int(1), int(2), int(2), rat(4, 3)]));
    }

    #[test]
    fn umbral_coefficients_are_a_bijection() {
        let a: Vec<Rational> = (0..8).map(|k| rat(k * k - 3, k + 1)).collect();
        let s = S::from_umbral(a.clone());
        for (k, ak) in a.iter().enumerate() {
            assert_eq!(&s.umbral_coeff(k), ak);
        }
        // e^t has a_k = 1 for every k
        let e = S::exp(&int(1), 6);
        assert!((0..6).all(|k| e.umbral_coeff(k).is_one()));
    }

    #[test]
    fn display_and_json() {
        let s = S::new(vec![int(1), int(0), rat(-1, 2), int(3)]);
        assert_eq!(s.to_string(), "1 - 1/2*t^2 + 3*t^3 + O(t^4)");
        assert_eq!(S::zero(2).to_string(), "O(t^2)");
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"["1","0","-1/2","3"]"#);
        let back: S = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let e = euler_g(&WRational::w(), 3).inverse().unwrap();
        let back: Series<WRational> = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert_eq!(back, e);
    }

    fn coeff() -> impl Strategy<Value = Rational> {
        (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
    }

    fn series(n: usize) -> impl Strategy<Value = S> {
        prop::collection::vec(coeff(), n).prop_map(S::new)
    }

    fn invertible(n: usize) -> impl Strategy<Value = S> {
        series(n).prop_filter("nonzero constant term", |s| !s.coeff(0).is_zero())
    }

    fn delta(n: usize) -> impl Strategy<Value = S> {
        let lead = prop::sample::select(vec![int(1), int(-1), int(2), rat(1, 2)]);
        (lead, series(n)).prop_map(|(c1, mut s)| {
            s.coeffs[0] = Rational::zero();
            s.coeffs[1] = c1;
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn multiplication_commutes_and_associates(a in series(8), b in series(8), c in series(8)) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn inverse_round_trip(f in invertible(8)) {
            prop_assert_eq!(&f * &f.inverse().unwrap(), S::one(8));
        }

        #[test]
        fn reversion_round_trip_both_ways(f in delta(10)) {
            let fbar = f.reverse().unwrap();
            prop_assert_eq!(f.compose(&fbar).unwrap(), S::t(10));
            prop_assert_eq!(fbar.compose(&f).unwrap(), S::t(10));
        }

        #[test]
        fn order_is_additive(a in series(8), b in series(8), i in 0usize..4, j in 0usize..4) {
            let fa = &a * &S::monomial(int(1), i, 8);
            let fb = &b * &S::monomial(int(1), j, 8);
            if let (Order::Finite(x), Order::Finite(y)) = (fa.order(), fb.order()) {
                if x + y < 8 {
                    prop_assert_eq!((&fa * &fb).order(), Order::Finite(x + y));
                }
            }
        }
    }
}
