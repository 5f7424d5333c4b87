//! Exact scalars: rationals, the field Q(w), combinatorial integers.

pub mod combinat;
pub mod field;
pub mod rational;
pub mod wpoly;
pub mod wrational;

pub use combinat::{binomial, compositions, factorial, multinomial};
pub use field::Field;
pub use rational::{int, parse_rational, rat, rational_normalize, Rational};
pub use wpoly::WPolynomial;
pub use wrational::WRational;

#[cfg(test)]
mod properties {
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    use super::*;

    fn wpoly() -> impl Strategy<Value = WPolynomial> {
        prop::collection::vec(-4i64..=4, 0..=5).prop_map(|c| WPolynomial::from_ints(&c))
    }

    fn wrat() -> impl Strategy<Value = WRational> {
        (wpoly(), wpoly())
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| WRational::new(n, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn addition_is_associative(a in wrat(), b in wrat(), c in wrat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn multiplication_distributes(a in wrat(), b in wrat(), c in wrat()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn nonzero_elements_invert(a in wrat()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(&a * &a.inv().unwrap(), WRational::one());
        }

        #[test]
        fn subtraction_cancels(a in wrat(), b in wrat()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in wrat(), b in wrat(), w0 in -6i64..=6) {
            let at = int(w0);
            if let (Ok(x), Ok(y)) = (a.eval(&at), b.eval(&at)) {
                prop_assert_eq!((&a + &b).eval(&at).unwrap(), &x + &y);
                prop_assert_eq!((&a * &b).eval(&at).unwrap(), &x * &y);
            }
        }

        #[test]
        fn text_round_trip(a in wrat()) {
            let back: WRational = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
