//! The umbral algebra: series acting on polynomials.
//!
//! A series `f(t)` is both a linear functional, through the pairing
//! `<t^k | x^n> = n! delta_{n,k}`, and an operator, with `t^k` acting as the
//! k-th derivative. Sheffer sequences for a pair `(g, f)` are built from the
//! generating function `e^{y fbar(t)} / g(fbar(t))`.

mod xpoly;

use crate::arith::{compositions, factorial, multinomial, Field};
use crate::error::{Error, Result};
use crate::series::{Order, Series};

pub use xpoly::XPolynomial;
use xpoly::falling;

fn require_precision<K: Field>(f: &Series<K>, p: &XPolynomial<K>) -> Result<()> {
    if let Some(d) = p.degree() {
        if f.precision() <= d {
            return Err(Error::InsufficientPrecision { required: d + 1, available: f.precision() });
        }
    }
    Ok(())
}

/// `<f(t) | p(x)> = sum_j p_j * j! * c_j(f)`.
pub fn pairing<K: Field>(f: &Series<K>, p: &XPolynomial<K>) -> Result<K> {
    require_precision(f, p)?;
    Ok(p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, pj)| !pj.is_zero())
        .fold(K::zero(), |acc, (j, pj)| acc + pj.clone() * f.umbral_coeff(j)))
}

/// `f(t) p(x) = sum_k c_k(f) p^{(k)}(x)`.
pub fn apply_functional<K: Field>(f: &Series<K>, p: &XPolynomial<K>) -> Result<XPolynomial<K>> {
    require_precision(f, p)?;
    let Some(deg) = p.degree() else {
        return Ok(XPolynomial::zero());
    };
    let mut out = vec![K::zero(); deg + 1];
    for (j, pj) in p.coeffs().iter().enumerate() {
        if pj.is_zero() {
            continue;
        }
        for k in 0..=j {
            let ck = f.coeff(k);
            if ck.is_zero() {
                continue;
            }
            let term = ck.clone() * pj.clone() * K::from_integer(falling(j, k));
            out[j - k] = out[j - k].clone() + term;
        }
    }
    Ok(XPolynomial::new(out))
}

/// A Sheffer pair `(g, f)`: `g` invertible, `f` a delta series.
#[derive(Clone, Debug, PartialEq)]
pub struct ShefferPair<K: Field> {
    g: Series<K>,
    f: Series<K>,
}

impl<K: Field> ShefferPair<K> {
    pub fn new(g: Series<K>, f: Series<K>) -> Result<Self> {
        if g.order() != Order::Finite(0) {
            return Err(Error::InvalidPair("g must be invertible (order 0)"));
        }
        if f.order() != Order::Finite(1) {
            return Err(Error::InvalidPair("f must be a delta series (order 1)"));
        }
        Ok(Self { g, f })
    }

    /// The pair `(g, t)`, whose Sheffer sequence is the Appell sequence of `g`.
    pub fn appell(g: Series<K>) -> Result<Self> {
        let n = g.precision();
        Self::new(g, Series::t(n.max(2)))
    }

    pub fn g(&self) -> &Series<K> {
        &self.g
    }

    pub fn f(&self) -> &Series<K> {
        &self.f
    }

    fn precision(&self) -> usize {
        self.g.precision().min(self.f.precision())
    }

    /// `g(t) f(t)^k`.
    pub fn basis_functional(&self, k: usize) -> Series<K> {
        let n = self.precision();
        &self.g.truncate(n) * &self.f.truncate(n).pow(k)
    }
}

/// `S_n(x) = g(t)^{-1} x^n` for `n < count`.
pub fn appell_basis<K: Field>(g: &Series<K>, count: usize) -> Result<Vec<XPolynomial<K>>> {
    if g.precision() < count {
        return Err(Error::InsufficientPrecision { required: count, available: g.precision() });
    }
    let inv = g.inverse()?;
    Ok((0..count)
        .map(|n| {
            // [x^m] S_n = c_{n-m}(1/g) * n!/m!
            let coeffs = (0..=n)
                .map(|m| inv.coeff(n - m).clone() * K::from_integer(falling(n, n - m)))
                .collect();
            XPolynomial::new(coeffs)
        })
        .collect())
}

/// Sheffer sequence of `(g, f)` from `e^{y fbar(t)} / g(fbar(t))`:
/// `[y^m] S_n = n!/m! * [t^n] (fbar^m / g(fbar))`.
pub fn sheffer_basis<K: Field>(pair: &ShefferPair<K>, count: usize) -> Result<Vec<XPolynomial<K>>> {
    let available = pair.precision();
    if available < count {
        return Err(Error::InsufficientPrecision { required: count, available });
    }
    let n = count.max(2);
    let fbar = pair.f.truncate(n).reverse()?;
    let h = pair.g.truncate(n).compose(&fbar)?.inverse()?;
    let mut columns: Vec<Series<K>> = Vec::with_capacity(count);
    let mut power = h;
    for _ in 0..count {
        let next = &power * &fbar;
        columns.push(power);
        power = next;
    }
    Ok((0..count)
        .map(|deg| {
            let coeffs = (0..=deg)
                .map(|m| columns[m].coeff(deg).clone() * K::from_integer(falling(deg, deg - m)))
                .collect();
            XPolynomial::new(coeffs)
        })
        .collect())
}

/// `<g(t) f(t)^k | S_n(x)>`, which is `n! delta_{n,k}` for the Sheffer
/// sequence of the pair.
pub fn biorthogonality_check<K: Field>(
    pair: &ShefferPair<K>,
    basis: &[XPolynomial<K>],
    n: usize,
    k: usize,
) -> Result<K> {
    let s = basis
        .get(n)
        .ok_or(Error::BasisTooShort { required: n + 1, available: basis.len() })?;
    pairing(&pair.basis_functional(k), s)
}

/// Coefficients `lambda_k = <g f^k | p> / k!` with `p = sum lambda_k S_k`.
pub fn expand_in_basis<K: Field>(
    p: &XPolynomial<K>,
    pair: &ShefferPair<K>,
    basis: &[XPolynomial<K>],
) -> Result<Vec<K>> {
    let Some(deg) = p.degree() else {
        return Ok(Vec::new());
    };
    if basis.len() <= deg {
        return Err(Error::BasisTooShort { required: deg + 1, available: basis.len() });
    }
    (0..=deg)
        .map(|k| {
            let v = pairing(&pair.basis_functional(k), p)?;
            Ok(v / K::from_integer(factorial(k as u64)))
        })
        .collect()
}

/// `sum_k lambda_k S_k(x)`.
pub fn reconstruct<K: Field>(lambda: &[K], basis: &[XPolynomial<K>]) -> XPolynomial<K> {
    lambda
        .iter()
        .zip(basis)
        .fold(XPolynomial::zero(), |acc, (l, s)| &acc + &s.scale(l))
}

/// Both sides of `<f_1 ... f_m | x^n> = sum multinomial(n; i) prod <f_j | x^{i_j}>`.
pub fn multinomial_pairing<K: Field>(fs: &[Series<K>], n: usize) -> Result<(K, K)> {
    let Some(first) = fs.first() else {
        let unit = if n == 0 { K::one() } else { K::zero() };
        return Ok((unit.clone(), unit));
    };
    for f in fs {
        if f.precision() <= n {
            return Err(Error::InsufficientPrecision { required: n + 1, available: f.precision() });
        }
    }
    let product = fs[1..].iter().fold(first.clone(), |acc, f| &acc * f);
    let lhs = pairing(&product, &XPolynomial::x_pow(n))?;
    let mut rhs = K::zero();
    for parts in compositions(n, fs.len()) {
        let as_u64: Vec<u64> = parts.iter().map(|&i| i as u64).collect();
        let mut term = K::from_integer(multinomial(n as u64, &as_u64));
        for (f, &i) in fs.iter().zip(&parts) {
            term = term * f.umbral_coeff(i);
        }
        rhs = rhs + term;
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    use super::*;
    use crate::arith::{int, rat, Rational, WRational};
    use crate::series::euler_g;

    type P = XPolynomial<Rational>;
    type S = Series<Rational>;

    fn wr(s: &str) -> WRational {
        s.parse().unwrap()
    }

    fn euler_egf(n: usize) -> Series<WRational> {
        euler_g(&WRational::w(), n).inverse().unwrap()
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&S::monomial(int(1), 2, 4), &P::x_pow(2)).unwrap(), int(2));
        assert_eq!(pairing(&S::exp(&int(3), 5), &P::x_pow(3)).unwrap(), int(27));
        let e1 = pairing(&euler_egf(4), &XPolynomial::x_pow(1)).unwrap();
        assert_eq!(e1, wr("-2*w/(1+w)^2"));
    }

    #[test]
    fn pairing_needs_precision() {
        let err = pairing(&S::one(3), &P::x_pow(3)).unwrap_err();
        assert_eq!(err, Error::InsufficientPrecision { required: 4, available: 3 });
        assert!(err.to_string().contains("need at least 4"));
        assert!(apply_functional(&S::one(2), &P::x_pow(2)).is_err());
    }

    #[test]
    fn operator_examples() {
        assert_eq!(
            apply_functional(&S::t(4), &P::x_pow(3)).unwrap(),
            P::new(vec![int(0), int(0), int(3)])
        );
        assert_eq!(
            apply_functional(&S::exp(&int(1), 4), &P::x_pow(2)).unwrap(),
            P::new(vec![int(1), int(2), int(1)])
        );
        let e1x = apply_functional(&euler_egf(4), &XPolynomial::x_pow(1)).unwrap();
        assert_eq!(e1x, XPolynomial::new(vec![wr("-2*w/(1+w)^2"), wr("2/(1+w)")]));
    }

    #[test]
    fn appell_of_one_is_monomials() {
        let basis = appell_basis(&S::one(6), 6).unwrap();
        for (n, s) in basis.iter().enumerate() {
            assert_eq!(s, &P::x_pow(n));
        }
    }

    /// Classical Euler polynomials from `E_n(x) + sum_j C(n,j) E_j(x) = 2 x^n`.
    fn classical_euler(count: usize) -> Vec<P> {
        let mut out: Vec<P> = Vec::new();
        for n in 0..count {
            let mut rhs = P::x_pow(n).scale(&int(2));
            for (j, ej) in out.iter().enumerate() {
                rhs = &rhs - &ej.scale(&Rational::from_integer(crate::arith::binomial(n as u64, j as i64)));
            }
            out.push(rhs.scale(&rat(1, 2)));
        }
        out
    }

    #[test]
    fn appell_of_classical_euler_g() {
        let basis = appell_basis(&euler_g(&int(1), 8), 8).unwrap();
        assert_eq!(basis[1], P::new(vec![rat(-1, 2), int(1)]));
        assert_eq!(basis, classical_euler(8));
    }

    #[test]
    fn appell_rejects_bad_input() {
        assert_eq!(appell_basis(&S::t(4), 4).unwrap_err(), Error::NotInvertible);
        assert!(matches!(appell_basis(&S::one(3), 4), Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn sheffer_examples() {
        let identity = ShefferPair::new(S::one(6), S::t(6)).unwrap();
        let basis = sheffer_basis(&identity, 6).unwrap();
        assert!(basis.iter().enumerate().all(|(n, s)| s == &P::x_pow(n)));

        let pair = ShefferPair::new(euler_g(&WRational::w(), 7), Series::t(7)).unwrap();
        assert_eq!(sheffer_basis(&pair, 7).unwrap(), appell_basis(pair.g(), 7).unwrap());

        let assoc = ShefferPair::new(S::one(6), crate::series::ints(&[0, 1, 1, 0, 0, 0])).unwrap();
        let basis = sheffer_basis(&assoc, 6).unwrap();
        assert_eq!(basis[2], P::new(vec![int(0), int(-2), int(1)]));
    }

    #[test]
    fn pair_invariants_are_enforced() {
        assert!(matches!(ShefferPair::new(S::t(4), S::t(4)), Err(Error::InvalidPair(_))));
        assert!(matches!(ShefferPair::new(S::one(4), S::one(4)), Err(Error::InvalidPair(_))));
        assert!(matches!(
            ShefferPair::new(S::one(4), S::monomial(int(1), 2, 4)),
            Err(Error::InvalidPair(_))
        ));
    }

    #[test]
    fn biorthogonality_examples() {
        let pair = ShefferPair::appell(euler_g(&WRational::w(), 8)).unwrap();
        let basis = appell_basis(pair.g(), 8).unwrap();
        assert_eq!(biorthogonality_check(&pair, &basis, 2, 2).unwrap(), WRational::from_i64(2));
        assert_eq!(biorthogonality_check(&pair, &basis, 3, 1).unwrap(), WRational::zero());
        let id = ShefferPair::new(S::one(6), S::t(6)).unwrap();
        let mono: Vec<P> = (0..6).map(P::x_pow).collect();
        assert_eq!(biorthogonality_check(&id, &mono, 4, 4).unwrap(), int(24));
        assert!(matches!(biorthogonality_check(&id, &mono, 6, 0), Err(Error::BasisTooShort { .. })));
    }

    #[test]
    fn expansion_examples() {
        let pair = ShefferPair::appell(euler_g(&WRational::w(), 6)).unwrap();
        let basis = appell_basis(pair.g(), 6).unwrap();
        let x2 = XPolynomial::x_pow(2);
        let lambda = expand_in_basis(&x2, &pair, &basis).unwrap();
        assert_eq!(lambda, vec![wr("w/2"), wr("w"), wr("(1+w)/2")]);
        assert_eq!(reconstruct(&lambda, &basis), x2);

        let lambda = expand_in_basis(&basis[3], &pair, &basis).unwrap();
        assert_eq!(lambda, vec![WRational::zero(), WRational::zero(), WRational::zero(), WRational::one()]);

        let lambda = expand_in_basis(&XPolynomial::one(), &pair, &basis).unwrap();
        assert_eq!(lambda, vec![pair.g().coeff(0).clone()]);
        assert_eq!(reconstruct(&lambda, &basis), XPolynomial::one());

        assert!(matches!(
            expand_in_basis(&XPolynomial::x_pow(6), &pair, &basis),
            Err(Error::BasisTooShort { .. })
        ));
    }

    #[test]
    fn multinomial_examples() {
        let t = S::t(4);
        assert_eq!(multinomial_pairing(&[t.clone(), t], 2).unwrap(), (int(2), int(2)));
        let e = S::exp(&int(1), 5);
        assert_eq!(multinomial_pairing(&[e.clone(), e], 3).unwrap(), (int(8), int(8)));
        let egf = euler_egf(4);
        let (l, r) = multinomial_pairing(&[egf.clone(), egf], 1).unwrap();
        assert_eq!(l, wr("-8*w/(1+w)^3"));
        assert_eq!(l, r);
    }

    #[test]
    fn kronecker_property() {
        for k in 0..=12 {
            for n in 0..=12 {
                let v = pairing(&S::monomial(int(1), k, 13), &P::x_pow(n)).unwrap();
                let expect = if n == k { Rational::from_integer(factorial(n as u64)) } else { int(0) };
                assert_eq!(v, expect, "k={k} n={n}");
            }
        }
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
    }

    fn poly(max_deg: usize) -> impl Strategy<Value = P> {
        prop::collection::vec(small(), 0..=max_deg + 1).prop_map(P::new)
    }

    fn series(n: usize) -> impl Strategy<Value = S> {
        prop::collection::vec(small(), n).prop_map(S::new)
    }

    fn invertible_pair() -> impl Strategy<Value = ShefferPair<Rational>> {
        let lead = prop::sample::select(vec![int(1), int(-1), int(2), rat(1, 2)]);
        (series(9), series(9), lead).prop_filter_map("invertible g", |(g, mut f, c1)| {
            let mut coeffs = f.coeffs().to_vec();
            coeffs[0] = int(0);
            coeffs[1] = c1;
            f = S::new(coeffs);
            ShefferPair::new(g, f).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn pairing_with_exponential_evaluates(p in poly(8), y in prop::sample::select(vec![int(0), int(1), int(-1), int(2), int(-2), rat(1, 2)])) {
            prop_assert_eq!(pairing(&S::exp(&y, 9), &p).unwrap(), p.eval(&y));
        }

        #[test]
        fn multiplicative_transfer(f in series(9), g in series(9), p in poly(8)) {
            let lhs = pairing(&(&f * &g), &p).unwrap();
            let rhs = pairing(&f, &apply_functional(&g, &p).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn monomial_reconstruction(p in poly(10)) {
            let rebuilt = (0..=10).fold(P::zero(), |acc, k| {
                let c = pairing(&S::monomial(int(1), k, 11), &p).unwrap()
                    / Rational::from_integer(factorial(k as u64));
                &acc + &P::monomial(c, k)
            });
            prop_assert_eq!(rebuilt, p);
        }

        #[test]
        fn derivative_duality(p in poly(8), k in 0usize..9) {
            let v = pairing(&S::monomial(int(1), k, 9), &p).unwrap();
            let mut d = p.clone();
            for _ in 0..k {
                d = d.derivative();
            }
            prop_assert_eq!(&v, &d.eval(&int(0)));
            prop_assert_eq!(v, p.coeff(k) * Rational::from_integer(factorial(k as u64)));
        }

        #[test]
        fn shift_plus_identity(p in poly(6), y in -3i64..=3) {
            let y = int(y);
            let op = &S::exp(&y, 7) + &S::one(7);
            let lhs = apply_functional(&op, &p).unwrap();
            prop_assert_eq!(&lhs, &(&p.shift(&y) + &p));
            prop_assert_eq!(pairing(&op, &p).unwrap(), p.eval(&y) + p.eval(&int(0)));
        }

        #[test]
        fn egf_identification(f in series(8)) {
            for k in 0..8 {
                prop_assert_eq!(pairing(&f, &P::x_pow(k)).unwrap(), f.umbral_coeff(k));
            }
        }

        #[test]
        fn sheffer_delta_lowering_and_biorthogonality(pair in invertible_pair()) {
            let basis = sheffer_basis(&pair, 8).unwrap();
            for n in 1..8 {
                let lowered = apply_functional(pair.f(), &basis[n]).unwrap();
                prop_assert_eq!(lowered, basis[n - 1].scale(&Rational::from_usize(n)));
            }
            for n in 0..8 {
                prop_assert_eq!(basis[n].degree(), Some(n));
                for k in 0..8 {
                    let v = biorthogonality_check(&pair, &basis, n, k).unwrap();
                    let expect = if n == k { Rational::from_integer(factorial(n as u64)) } else { int(0) };
                    prop_assert_eq!(v, expect);
                }
            }
        }
    }

    #[test]
    fn sheffer_of_t_matches_appell_over_rationals() {
        let g = S::new(vec![int(2), int(-1), rat(1, 3), int(4), int(0), int(1)]);
        let pair = ShefferPair::appell(g.clone()).unwrap();
        assert_eq!(sheffer_basis(&pair, 6).unwrap(), appell_basis(&g, 6).unwrap());
        assert_eq!(sheffer_basis(&pair, 6).unwrap()[0].leading().unwrap(), &rat(1, 2));
    }
}
