//! Weighted Euler numbers and polynomials.
//!
//! `E_{n,w}(x)` is generated by `2/(w e^t + 1) * e^{xt}` and the order-k
//! version by the k-th power of the same factor. Numbers are computed two
//! ways: the triangular recurrence
//! `(1+w) E_{n,w} = 2 delta_{n,0} - w sum_{j<n} C(n,j) E_{j,w}`
//! (obtained from `(w e^t + 1) * GF = 2`), and series inversion.
//!
//! The order-k polynomials have degree `n` and leading coefficient
//! `(2/(1+w))^k`; they are monic only at `w = 1`.

mod suite;

use crate::arith::{binomial, compositions, multinomial, Field, Rational, WRational};
use crate::error::{Error, Result};
use crate::series::{euler_g, Series};
use crate::umbral::XPolynomial;

pub use suite::{verify_paper_suite, verify_table, CheckLabel, CheckResult, CheckStatus, Counterexample, Report};

/// `(2/(w e^t + 1))^k` to `precision` coefficients, by `k - 1` plain
/// multiplications of the inverted series.
pub fn weighted_euler_gf<K: Field>(w: &K, precision: usize, order: usize) -> Result<Series<K>> {
    assert!(order >= 1, "order must be at least 1");
    let base = euler_g(w, precision).inverse()?;
    let mut acc = base.clone();
    for _ in 1..order {
        acc = &acc * &base;
    }
    Ok(acc)
}

/// `E_{0,w} .. E_{count-1,w}` by the triangular recurrence.
pub fn weighted_euler_numbers<K: Field>(w: &K, count: usize) -> Result<Vec<K>> {
    let one_plus_w = K::one() + w.clone();
    if one_plus_w.is_zero() {
        return Err(Error::NotInvertible);
    }
    let mut out: Vec<K> = Vec::with_capacity(count);
    for n in 0..count {
        let mut acc = if n == 0 { K::from_i64(2) } else { K::zero() };
        let mut sum = K::zero();
        for (j, ej) in out.iter().enumerate() {
            sum = sum + K::from_integer(binomial(n as u64, j as i64)) * ej.clone();
        }
        acc = acc - w.clone() * sum;
        out.push(acc / one_plus_w.clone());
    }
    Ok(out)
}

/// `E^{(k)}_{n,w} = n! [t^n] (2/(w e^t + 1))^k`.
pub fn order_k_numbers<K: Field>(w: &K, count: usize, order: usize) -> Result<Vec<K>> {
    let gf = weighted_euler_gf(w, count.max(1), order)?;
    Ok((0..count).map(|n| gf.umbral_coeff(n)).collect())
}

/// `P_n(x) = sum_l C(n,l) x^l a_{n-l}` for each prefix of `numbers`.
pub fn polys_from_numbers<K: Field>(numbers: &[K]) -> Vec<XPolynomial<K>> {
    (0..numbers.len())
        .map(|n| {
            XPolynomial::new(
                (0..=n)
                    .map(|l| K::from_integer(binomial(n as u64, l as i64)) * numbers[n - l].clone())
                    .collect(),
            )
        })
        .collect()
}

/// `E^{(k)}_{n,w}(x)` for `n < count` in binomial form over the order-k
/// generating-function numbers.
pub fn weighted_euler_polys<K: Field>(w: &K, count: usize, order: usize) -> Result<Vec<XPolynomial<K>>> {
    Ok(polys_from_numbers(&order_k_numbers(w, count, order)?))
}

/// `E^{(k)}_{n,w}` two ways: from the generating function, and as the
/// multinomial sum of products of order-1 numbers.
pub fn order_k_multinomial<K: Field>(w: &K, order: usize, n: usize) -> Result<(K, K)> {
    let from_gf = order_k_numbers(w, n + 1, order)?.swap_remove(n);
    let base = weighted_euler_numbers(w, n + 1)?;
    Ok((from_gf, multinomial_sum(&base, order, n)))
}

/// `sum_{i_1+..+i_k=n} multinomial(n; i) prod E_{i_j}`.
pub(crate) fn multinomial_sum<K: Field>(base: &[K], order: usize, n: usize) -> K {
    let mut acc = K::zero();
    for parts in compositions(n, order) {
        let as_u64: Vec<u64> = parts.iter().map(|&i| i as u64).collect();
        let term = parts
            .iter()
            .fold(K::from_integer(multinomial(n as u64, &as_u64)), |t, &i| t * base[i].clone());
        acc = acc + term;
    }
    acc
}

/// The weighted fermionic integral of a polynomial integrand by linearity:
/// `sum_j f_j E_{j,w}`.
pub fn fermionic_integral<K: Field>(f: &XPolynomial<K>, numbers: &[K]) -> Result<K> {
    if let Some(d) = f.degree() {
        if numbers.len() <= d {
            return Err(Error::TableTooSmall { what: format!("E_{{{d},w}}") });
        }
    }
    Ok(f.coeffs()
        .iter()
        .zip(numbers)
        .fold(K::zero(), |acc, (c, e)| acc + c.clone() * e.clone()))
}

/// Classical Euler polynomials from
/// `E_n(x) + sum_{j<=n} C(n,j) E_j(x) = 2 x^n`; shares no code path with the
/// weighted construction.
pub fn classical_euler_polys(count: usize) -> Vec<XPolynomial<Rational>> {
    let half = Rational::new(1.into(), 2.into());
    let mut out: Vec<XPolynomial<Rational>> = Vec::with_capacity(count);
    for n in 0..count {
        let mut rhs = XPolynomial::monomial(Rational::from_integer(2.into()), n);
        for (j, ej) in out.iter().enumerate() {
            rhs = &rhs - &ej.scale(&Rational::from_integer(binomial(n as u64, j as i64)));
        }
        out.push(rhs.scale(&half));
    }
    out
}

/// How the weight is carried by a table.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightMode {
    Symbolic,
    Evaluated(Rational),
}

/// Numbers and polynomials for orders `1..=max_order`, indices `0..count`.
///
/// Order 1 numbers come from the recurrence, higher orders from the
/// generating function; polynomials are always the binomial form of the
/// stored numbers.
#[derive(Clone, Debug)]
pub struct EulerTable<K: Field> {
    weight: K,
    mode: WeightMode,
    numbers: Vec<Vec<K>>,
    polys: Vec<Vec<XPolynomial<K>>>,
}

impl EulerTable<WRational> {
    pub fn symbolic(count: usize, max_order: usize) -> Result<Self> {
        Self::build(WRational::w(), WeightMode::Symbolic, count, max_order)
    }

    /// Substitutes `w = at` everywhere.
    pub fn evaluate(&self, at: &Rational) -> Result<EulerTable<Rational>> {
        let numbers = self
            .numbers
            .iter()
            .map(|row| row.iter().map(|e| e.eval(at)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let polys = self
            .polys
            .iter()
            .map(|row| row.iter().map(|p| p.try_map(|c| c.eval(at))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(EulerTable { weight: at.clone(), mode: WeightMode::Evaluated(at.clone()), numbers, polys })
    }
}

impl EulerTable<Rational> {
    pub fn at_weight(w: &Rational, count: usize, max_order: usize) -> Result<Self> {
        Self::build(w.clone(), WeightMode::Evaluated(w.clone()), count, max_order)
    }
}

impl<K: Field> EulerTable<K> {
    fn build(weight: K, mode: WeightMode, count: usize, max_order: usize) -> Result<Self> {
        assert!(max_order >= 1, "order must be at least 1");
        let mut numbers = vec![weighted_euler_numbers(&weight, count)?];
        for k in 2..=max_order {
            numbers.push(order_k_numbers(&weight, count, k)?);
        }
        let polys = numbers.iter().map(|row| polys_from_numbers(row)).collect();
        Ok(Self { weight, mode, numbers, polys })
    }

    pub fn weight(&self) -> &K {
        &self.weight
    }

    pub fn mode(&self) -> &WeightMode {
        &self.mode
    }

    pub fn count(&self) -> usize {
        self.numbers[0].len()
    }

    pub fn max_order(&self) -> usize {
        self.numbers.len()
    }

    fn row(&self, order: usize) -> Result<usize> {
        if order == 0 || order > self.max_order() {
            return Err(Error::TableTooSmall { what: format!("order {order}") });
        }
        Ok(order - 1)
    }

    /// `E^{(k)}_{0..count,w}`.
    pub fn numbers(&self, order: usize) -> Result<&[K]> {
        Ok(&self.numbers[self.row(order)?])
    }

    pub fn polys(&self, order: usize) -> Result<&[XPolynomial<K>]> {
        Ok(&self.polys[self.row(order)?])
    }

    pub fn number(&self, order: usize, n: usize) -> Result<&K> {
        self.numbers(order)?
            .get(n)
            .ok_or_else(|| Error::TableTooSmall { what: format!("index {n}") })
    }

    pub fn poly(&self, order: usize, n: usize) -> Result<&XPolynomial<K>> {
        self.polys(order)?
            .get(n)
            .ok_or_else(|| Error::TableTooSmall { what: format!("index {n}") })
    }

    /// A copy with `E^{(k)}_{n,w}` shifted by `delta` and the order-k
    /// polynomials rebuilt from the altered numbers.
    pub fn with_perturbed_number(&self, order: usize, n: usize, delta: &K) -> Result<Self> {
        let row = self.row(order)?;
        let mut out = self.clone();
        let slot = out.numbers[row]
            .get_mut(n)
            .ok_or_else(|| Error::TableTooSmall { what: format!("index {n}") })?;
        *slot = slot.clone() + delta.clone();
        out.polys[row] = polys_from_numbers(&out.numbers[row]);
        Ok(out)
    }

    /// Tabular body `n & E^{(k)}_{n,w} \\` for pasting into LaTeX.
    pub fn latex_numbers(&self, order: usize) -> Result<String> {
        Ok(self
            .numbers(order)?
            .iter()
            .enumerate()
            .map(|(n, e)| format!("{n} & ${}$ \\\\\n", e.to_latex()))
            .collect())
    }

    pub fn latex_polys(&self, order: usize) -> Result<String> {
        Ok(self
            .polys(order)?
            .iter()
            .enumerate()
            .map(|(n, p)| format!("{n} & ${}$ \\\\\n", p.to_latex()))
            .collect())
    }
}

/// `n! c_n` of a series, for every known coefficient.
pub fn umbral_coeffs<K: Field>(s: &Series<K>) -> Vec<K> {
    (0..s.precision()).map(|n| s.umbral_coeff(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::umbral::appell_basis;
    use num_traits::{One, Zero};

    fn wr(s: &str) -> WRational {
        s.parse().unwrap()
    }

    fn w() -> WRational {
        WRational::w()
    }

    #[test]
    fn generating_function_examples() {
        let gf = weighted_euler_gf(&w(), 2, 1).unwrap();
        assert_eq!(gf.coeffs(), &[wr("2/(1+w)"), wr("-2*w/(1+w)^2")]);
        let classical = weighted_euler_gf(&int(1), 4, 1).unwrap();
        assert_eq!(classical.coeff(0), &int(1));
        assert_eq!(classical.coeff(1), &rat(-1, 2));
        let sq = weighted_euler_gf(&w(), 2, 2).unwrap();
        assert_eq!(sq.coeffs(), &[wr("4/(1+w)^2"), wr("-8*w/(1+w)^3")]);
    }

    #[test]
    fn recurrence_numbers() {
        let e = weighted_euler_numbers(&w(), 4).unwrap();
        assert_eq!(e[0], wr("2/(1+w)"));
        assert_eq!(e[1], wr("-2*w/(1+w)^2"));
        assert_eq!(e[2], wr("2*w*(w-1)/(1+w)^3"));
        assert_eq!(e[3], wr("-2*w*(w^2-4*w+1)/(1+w)^4"));
        assert_eq!(e[2].to_string(), "2*w*(w - 1)/(1 + w)^3");
        let classical = weighted_euler_numbers(&int(1), 4).unwrap();
        assert_eq!(classical, vec![int(1), rat(-1, 2), int(0), rat(1, 4)]);
    }

    #[test]
    fn recurrence_agrees_with_series_inversion() {
        let rec = weighted_euler_numbers(&w(), 20).unwrap();
        let gf = order_k_numbers(&w(), 20, 1).unwrap();
        assert_eq!(rec, gf);
    }

    #[test]
    fn pole_at_minus_one() {
        assert_eq!(weighted_euler_numbers(&int(-1), 3).unwrap_err(), Error::NotInvertible);
        assert!(EulerTable::at_weight(&int(-1), 3, 1).is_err());
    }

    #[test]
    fn polynomial_examples() {
        let polys = weighted_euler_polys(&w(), 3, 1).unwrap();
        assert_eq!(polys[1], XPolynomial::new(vec![wr("-2*w/(1+w)^2"), wr("2/(1+w)")]));
        for k in 1..=4 {
            let p = weighted_euler_polys(&w(), 1, k).unwrap();
            let lead = crate::arith::field::pow(&wr("2/(1+w)"), k as u64);
            assert_eq!(p[0], XPolynomial::constant(lead));
        }
        let classical = weighted_euler_polys(&int(1), 2, 1).unwrap();
        assert_eq!(classical[1], XPolynomial::new(vec![rat(-1, 2), int(1)]));
    }

    #[test]
    fn binomial_form_is_appell_basis() {
        for k in 1..=3 {
            let g = euler_g(&w(), 8).pow(k);
            assert_eq!(weighted_euler_polys(&w(), 8, k).unwrap(), appell_basis(&g, 8).unwrap());
        }
    }

    #[test]
    fn multinomial_examples() {
        let (a, b) = order_k_multinomial(&w(), 2, 0).unwrap();
        assert_eq!(a, wr("4/(1+w)^2"));
        assert_eq!(a, b);
        let (a, b) = order_k_multinomial(&w(), 2, 1).unwrap();
        assert_eq!(a, wr("-8*w/(1+w)^3"));
        assert_eq!(a, b);
        // brute force over the six compositions of 2 into 3 parts
        let e = weighted_euler_numbers(&w(), 3).unwrap();
        let brute = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [1, 0, 1], [0, 1, 1]]
            .iter()
            .map(|c| {
                let m = multinomial(2, &c.map(|i| i as u64));
                c.iter().fold(WRational::from_integer(m), |t, &i| &t * &e[i])
            })
            .fold(WRational::zero(), |acc, t| &acc + &t);
        let (a, b) = order_k_multinomial(&w(), 3, 2).unwrap();
        assert_eq!(a, brute);
        assert_eq!(b, brute);
    }

    #[test]
    fn table_laws() {
        let table = EulerTable::symbolic(12, 4).unwrap();
        for k in 1..=4 {
            let lead = crate::arith::field::pow(&wr("2/(1+w)"), k as u64);
            for n in 0..12 {
                let p = table.poly(k, n).unwrap();
                assert_eq!(p.degree(), Some(n));
                assert_eq!(p.leading().unwrap(), &lead);
                assert_eq!(&p.eval(&WRational::zero()), table.number(k, n).unwrap());
                if n > 0 {
                    let lowered = table.poly(k, n - 1).unwrap().scale(&WRational::from_usize(n));
                    assert_eq!(p.derivative(), lowered);
                }
            }
        }
    }

    #[test]
    fn evaluation_commutes_with_construction() {
        let symbolic = EulerTable::symbolic(12, 3).unwrap().evaluate(&int(4)).unwrap();
        let direct = EulerTable::at_weight(&int(4), 12, 3).unwrap();
        for k in 1..=3 {
            assert_eq!(symbolic.numbers(k).unwrap(), direct.numbers(k).unwrap());
            assert_eq!(symbolic.polys(k).unwrap(), direct.polys(k).unwrap());
        }
        assert_eq!(symbolic.mode(), &WeightMode::Evaluated(int(4)));
    }

    #[test]
    fn classical_reduction() {
        let at_one = EulerTable::symbolic(13, 1).unwrap().evaluate(&int(1)).unwrap();
        assert_eq!(at_one.polys(1).unwrap(), classical_euler_polys(13).as_slice());
    }

    #[test]
    fn perturbation_rebuilds_polynomials() {
        let table = EulerTable::symbolic(4, 1).unwrap();
        let bumped = table.with_perturbed_number(1, 2, &WRational::one()).unwrap();
        assert_eq!(bumped.number(1, 2).unwrap(), &(table.number(1, 2).unwrap() + &WRational::one()));
        assert_eq!(bumped.poly(1, 1).unwrap(), table.poly(1, 1).unwrap());
        assert_ne!(bumped.poly(1, 2).unwrap(), table.poly(1, 2).unwrap());
        assert_ne!(bumped.poly(1, 3).unwrap(), table.poly(1, 3).unwrap());
    }

    #[test]
    fn table_lookups_fail_outside_range() {
        let table = EulerTable::symbolic(3, 2).unwrap();
        assert!(table.number(3, 0).is_err());
        assert!(table.number(0, 0).is_err());
        assert!(table.poly(1, 3).is_err());
    }

    #[test]
    fn integral_by_linearity() {
        let e = weighted_euler_numbers(&int(4), 3).unwrap();
        let f = XPolynomial::new(vec![int(1), int(1)]);
        assert_eq!(fermionic_integral(&f, &e).unwrap(), rat(2, 5) + rat(-8, 25));
        assert!(fermionic_integral(&XPolynomial::x_pow(3), &e).is_err());
    }

    #[test]
    fn latex_tables() {
        let table = EulerTable::symbolic(2, 1).unwrap();
        assert_eq!(
            table.latex_numbers(1).unwrap(),
            "0 & $\\frac{2}{1 + w}$ \\\\\n1 & $-\\frac{2 w}{(1 + w)^{2}}$ \\\\\n"
        );
        let classical = EulerTable::at_weight(&int(1), 2, 1).unwrap();
        assert_eq!(classical.latex_polys(1).unwrap(), "0 & $1$ \\\\\n1 & $-\\frac{1}{2} + x$ \\\\\n");
    }
}
