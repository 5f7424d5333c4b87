//! Truncated fermionic sums `sum_{a < p^n} w^a f(a) (-1)^a` and their
//! approach to the exact weighted Euler values.

mod number;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{Field, Rational};
use crate::error::{Error, Result};
use crate::euler::{fermionic_integral, weighted_euler_numbers};
use crate::umbral::XPolynomial;

pub use number::{
    int_valuation, is_odd_prime, padic_from_rational, rational_valuation, PadicNumber, Valuation,
    ZERO_VALUATION_GUARD,
};

/// Rejects weights with `v_p(1 - w) < 1`.
pub fn check_weight(w: &Rational, p: u64) -> Result<()> {
    number::check_prime(p)?;
    match rational_valuation(&(Rational::one() - w), p) {
        Some(v) if v < 1 => Err(Error::InadmissibleWeight { w: w.to_string(), p }),
        _ => Ok(()),
    }
}

/// One truncated sum at a given level.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionicSum {
    pub integrand: XPolynomial<Rational>,
    pub weight: Rational,
    pub level: u32,
    pub exact: Rational,
    pub value: PadicNumber,
}

/// Exact `S_m = sum_{a < p^m} (-w)^a f(a)` for `m = 1..=levels`.
///
/// Everything is kept over the common denominator of the deepest level so
/// that shallower sums are prefixes of one integer accumulation.
pub fn exact_partial_sums(f: &XPolynomial<Rational>, w: &Rational, p: u64, levels: u32) -> Result<Vec<Rational>> {
    check_weight(w, p)?;
    if levels == 0 {
        return Ok(Vec::new());
    }
    let lcm = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<BigInt> = f.coeffs().iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let eval = |a: &BigInt| scaled.iter().rev().fold(BigInt::zero(), |acc, c| acc * a + c);

    let wn = -w.numer();
    let wd = w.denom().clone();
    let last = p.pow(levels) as usize;
    // wd^(last - 1 - a), built from the top down
    let mut wd_pows = vec![BigInt::one(); last];
    for a in (0..last.saturating_sub(1)).rev() {
        wd_pows[a] = &wd_pows[a + 1] * &wd;
    }
    let denominator = &wd_pows[0] * &lcm;

    let mut out = Vec::with_capacity(levels as usize);
    let mut checkpoint = p as usize;
    let mut acc = BigInt::zero();
    let mut wn_pow = BigInt::one();
    for a in 0..last {
        acc += &wn_pow * &wd_pows[a] * eval(&BigInt::from(a));
        wn_pow *= &wn;
        if a + 1 == checkpoint {
            out.push(Rational::new(acc.clone(), denominator.clone()));
            checkpoint *= p as usize;
        }
    }
    Ok(out)
}

/// The level-`level` sum reduced to `precision` p-adic digits.
pub fn fermionic_partial_sum(
    f: &XPolynomial<Rational>,
    w: &Rational,
    p: u64,
    level: u32,
    precision: u32,
) -> Result<PadicNumber> {
    Ok(fermionic_sums(f, w, p, level, precision)?
        .pop()
        .map(|s| s.value)
        .unwrap_or_else(|| PadicNumber::zero(p, precision)))
}

/// Every level `1..=levels`, computed in one pass.
pub fn fermionic_sums(
    f: &XPolynomial<Rational>,
    w: &Rational,
    p: u64,
    levels: u32,
    precision: u32,
) -> Result<Vec<FermionicSum>> {
    exact_partial_sums(f, w, p, levels)?
        .into_iter()
        .zip(1..)
        .map(|(exact, level)| {
            Ok(FermionicSum {
                integrand: f.clone(),
                weight: w.clone(),
                level,
                value: padic_from_rational(&exact, p, precision)?,
                exact,
            })
        })
        .collect()
}

/// `sum_j f_j E_{j,w}` with the numbers taken from the weighted Euler module.
pub fn exact_integral(f: &XPolynomial<Rational>, w: &Rational) -> Result<Rational> {
    let numbers = weighted_euler_numbers(w, f.degree().map_or(1, |d| d + 1))?;
    fermionic_integral(f, &numbers)
}

/// Every step rises, reading an exact zero as `+infinity`.
pub fn strictly_increasing(vals: &[Valuation]) -> bool {
    vals.windows(2).all(|pair| match pair {
        [_, Valuation::AtLeast(_)] => true,
        [Valuation::Exact(a), Valuation::Exact(b)] => b > a,
        _ => false,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelRow {
    pub level: u32,
    /// Exact rational; renderers may truncate it.
    #[serde(serialize_with = "to_string")]
    pub value: Rational,
    pub valuation: Valuation,
}

fn to_string<S: serde::Serializer, T: ToString>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub prime: u64,
    #[serde(serialize_with = "to_string")]
    pub weight: Rational,
    #[serde(serialize_with = "to_string")]
    pub target: Rational,
    /// `value` is the partial sum, `valuation` is `v_p(S_m - target)`.
    pub rows: Vec<LevelRow>,
    pub strictly_increasing: bool,
}

pub fn convergence_report(
    f: &XPolynomial<Rational>,
    w: &Rational,
    p: u64,
    levels: u32,
    precision: u32,
) -> Result<ConvergenceReport> {
    check_weight(w, p)?;
    let target = exact_integral(f, w)?;
    let rows = exact_partial_sums(f, w, p, levels)?
        .into_iter()
        .zip(1..)
        .map(|(s, level)| {
            let valuation = padic_from_rational(&(&s - &target), p, precision)?.valuation();
            Ok(LevelRow { level, value: s, valuation })
        })
        .collect::<Result<Vec<_>>>()?;
    let vals: Vec<Valuation> = rows.iter().map(|r| r.valuation).collect();
    Ok(ConvergenceReport {
        prime: p,
        weight: w.clone(),
        target,
        strictly_increasing: strictly_increasing(&vals),
        rows,
    })
}

/// `(w I(f(x+1)) + I(f), 2 f(0))` over any field, with `I` the integral by
/// linearity over the weighted Euler numbers at `w`.
pub fn shift_identity_exact<K: Field>(f: &XPolynomial<K>, w: &K) -> Result<(K, K)> {
    let numbers = weighted_euler_numbers(w, f.degree().map_or(1, |d| d + 1))?;
    let shifted = fermionic_integral(&f.shift(&K::one()), &numbers)?;
    let plain = fermionic_integral(f, &numbers)?;
    Ok((w.clone() * shifted + plain, K::from_i64(2) * f.coeff(0)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShiftIdentityReport {
    pub prime: u64,
    #[serde(serialize_with = "to_string")]
    pub weight: Rational,
    /// `value` is `D_m = w S_m(f(x+1)) + S_m(f) - 2 f(0)`.
    pub rows: Vec<LevelRow>,
    pub strictly_increasing: bool,
    #[serde(serialize_with = "to_string")]
    pub exact_lhs: Rational,
    #[serde(serialize_with = "to_string")]
    pub exact_rhs: Rational,
    pub exact_holds: bool,
}

pub fn shift_identity_check(
    f: &XPolynomial<Rational>,
    w: &Rational,
    p: u64,
    levels: u32,
    precision: u32,
) -> Result<ShiftIdentityReport> {
    check_weight(w, p)?;
    let shifted = exact_partial_sums(&f.shift(&Rational::one()), w, p, levels)?;
    let plain = exact_partial_sums(f, w, p, levels)?;
    let twice_f0 = Rational::from_integer(2.into()) * f.coeff(0);
    let rows = shifted
        .iter()
        .zip(&plain)
        .zip(1..)
        .map(|((s1, s), level)| {
            let d = w * s1 + s - &twice_f0;
            let valuation = padic_from_rational(&d, p, precision)?.valuation();
            Ok(LevelRow { level, value: d, valuation })
        })
        .collect::<Result<Vec<_>>>()?;
    let vals: Vec<Valuation> = rows.iter().map(|r| r.valuation).collect();
    let (exact_lhs, exact_rhs) = shift_identity_exact(f, w)?;
    Ok(ShiftIdentityReport {
        prime: p,
        weight: w.clone(),
        strictly_increasing: strictly_increasing(&vals),
        rows,
        exact_holds: exact_lhs == exact_rhs,
        exact_lhs,
        exact_rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, WRational};

    fn poly(c: &[i64]) -> XPolynomial<Rational> {
        XPolynomial::new(c.iter().map(|&x| int(x)).collect())
    }

    fn exact(vals: &[i64]) -> Vec<Valuation> {
        vals.iter().map(|&v| Valuation::Exact(v)).collect()
    }

    #[test]
    fn partial_sum_examples() {
        let s1 = fermionic_partial_sum(&poly(&[1]), &int(4), 3, 1, 6).unwrap();
        assert_eq!(s1, padic_from_rational(&int(13), 3, 6).unwrap());
        let sums = exact_partial_sums(&poly(&[1]), &int(4), 3, 2).unwrap();
        assert_eq!(sums, vec![int(13), int(52429)]);
        assert_eq!(int(52429), rat(1 + 4i64.pow(9), 5));
        for level in 1..=4 {
            let s = fermionic_partial_sum(&poly(&[1]), &int(1), 3, level, 4).unwrap();
            assert_eq!(s, padic_from_rational(&int(1), 3, 4).unwrap());
        }
    }

    #[test]
    fn rational_weight_and_integrand() {
        // w = 1/4 has v_3(1 - w) = v_3(3/4) = 1
        let f = XPolynomial::new(vec![rat(1, 2), rat(1, 3)]);
        let got = exact_partial_sums(&f, &rat(1, 4), 3, 2).unwrap();
        let direct = |n: i64| {
            (0..n).fold(int(0), |acc, a| {
                let wa = rat(1, 4i64.pow(a as u32)) * if a % 2 == 0 { int(1) } else { int(-1) };
                acc + wa * f.eval(&int(a))
            })
        };
        assert_eq!(got, vec![direct(3), direct(9)]);
    }

    #[test]
    fn sums_are_linear_in_the_integrand() {
        let f = poly(&[2, -1, 3]);
        let g = poly(&[0, 5, 0, 1]);
        let c = rat(3, 7);
        let lhs = exact_partial_sums(&(&f + &g.scale(&c)), &int(4), 3, 3).unwrap();
        let sf = exact_partial_sums(&f, &int(4), 3, 3).unwrap();
        let sg = exact_partial_sums(&g, &int(4), 3, 3).unwrap();
        for m in 0..3 {
            assert_eq!(lhs[m], &sf[m] + &(&sg[m] * &c));
        }
    }

    #[test]
    fn weight_admissibility() {
        assert_eq!(
            exact_partial_sums(&poly(&[1]), &int(2), 3, 1).unwrap_err(),
            Error::InadmissibleWeight { w: "2".into(), p: 3 }
        );
        assert_eq!(
            Error::InadmissibleWeight { w: "2".into(), p: 3 }.to_string(),
            "weight 2 requires |1-w|_p < 1 for p = 3"
        );
        assert!(check_weight(&rat(1, 3), 3).is_err());
        assert!(check_weight(&int(1), 3).is_ok());
        assert!(check_weight(&int(10), 3).is_ok());
        assert_eq!(check_weight(&int(4), 4).unwrap_err(), Error::NotOddPrime(4));
    }

    #[test]
    fn constant_integrand_converges_by_one_digit_per_level() {
        let report = convergence_report(&poly(&[1]), &int(4), 3, 4, 12).unwrap();
        assert_eq!(report.target, rat(2, 5));
        let vals: Vec<Valuation> = report.rows.iter().map(|r| r.valuation).collect();
        assert_eq!(vals, exact(&[2, 3, 4, 5]));
        assert!(report.strictly_increasing);
    }

    #[test]
    fn linear_and_quadratic_integrands_converge() {
        let report = convergence_report(&poly(&[0, 1]), &int(4), 3, 4, 12).unwrap();
        assert_eq!(report.target, rat(-8, 25));
        assert!(report.strictly_increasing, "{report:?}");
        let report = convergence_report(&poly(&[0, 0, 1]), &int(6), 5, 4, 12).unwrap();
        assert_eq!(report.target, rat(2 * 6 * 5, 343));
        assert!(report.strictly_increasing, "{report:?}");
    }

    #[test]
    fn higher_monomials_at_p3() {
        // The deviation S_m - I(a^n) at w = 4, p = 3 does not always gain a
        // digit per level; these are the computed sequences.
        let vals = |n: usize| -> Vec<Valuation> {
            convergence_report(&XPolynomial::x_pow(n), &int(4), 3, 4, 12)
                .unwrap()
                .rows
                .iter()
                .map(|r| r.valuation)
                .collect()
        };
        assert_eq!(vals(5), exact(&[2, 4, 8, 7]));
    }

    #[test]
    fn shift_identity() {
        let report = shift_identity_check(&poly(&[0, 1]), &int(4), 3, 4, 12).unwrap();
        assert_eq!((report.exact_lhs.clone(), report.exact_rhs.clone()), (int(0), int(0)));
        assert!(report.exact_holds);
        let report = shift_identity_check(&poly(&[1]), &int(4), 3, 4, 12).unwrap();
        // D_m = 4^(3^m) - 1
        let vals: Vec<Valuation> = report.rows.iter().map(|r| r.valuation).collect();
        assert_eq!(vals, exact(&[2, 3, 4, 5]));
        assert_eq!(report.rows[0].value, int(63));
        let report = shift_identity_check(&poly(&[0, 0, 1]), &int(1), 5, 3, 8).unwrap();
        assert!(report.exact_holds);
        assert_eq!(report.exact_rhs, int(0));
        assert!(report.strictly_increasing);
    }

    #[test]
    fn shift_identity_holds_symbolically() {
        let w = WRational::w();
        for n in 0..=8 {
            let (lhs, rhs) = shift_identity_exact(&XPolynomial::x_pow(n), &w).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn monotonicity_reading() {
        assert!(strictly_increasing(&exact(&[1, 2, 5])));
        assert!(!strictly_increasing(&exact(&[1, 1])));
        assert!(strictly_increasing(&[Valuation::Exact(3), Valuation::AtLeast(24), Valuation::AtLeast(24)]));
        assert!(!strictly_increasing(&[Valuation::AtLeast(24), Valuation::Exact(3)]));
    }
}
