use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)`, zero outside `0..=n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n! / (i_1! ... i_m!)` when the parts sum to `n`, zero otherwise.
pub fn multinomial(n: u64, parts: &[u64]) -> BigInt {
    if parts.iter().sum::<u64>() != n {
        return BigInt::zero();
    }
    // product of binomials avoids the big intermediate factorial
    let mut acc = BigInt::one();
    let mut left = n;
    for &p in parts {
        acc *= binomial(left, p as i64);
        left -= p;
    }
    acc
}

/// All weak compositions of `n` into `parts` nonnegative summands, in
/// lexicographic order.
pub fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if parts == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = vec![0; parts];
    fill(n, 0, &mut current, &mut out);
    out
}

fn fill(left: usize, at: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if at + 1 == current.len() {
        current[at] = left;
        out.push(current.clone());
        return;
    }
    for i in 0..=left {
        current[at] = i;
        fill(left - i, at + 1, current, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn pascal_rule() {
        for n in 1..=30u64 {
            for k in 1..=n as i64 {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(3, &[1, 1, 1]), BigInt::from(6));
        assert_eq!(multinomial(4, &[2, 2]), BigInt::from(6));
        assert_eq!(multinomial(4, &[2, 1]), BigInt::zero());
        assert_eq!(multinomial(10, &[3, 3, 4]), factorial(10) / (factorial(3) * factorial(3) * factorial(4)));
    }

    #[test]
    fn composition_count_is_stars_and_bars() {
        for n in 0..8usize {
            for k in 1..5usize {
                let expect = binomial((n + k - 1) as u64, (k - 1) as i64);
                let all = compositions(n, k);
                assert_eq!(BigInt::from(all.len()), expect);
                assert!(all.iter().all(|c| c.iter().sum::<usize>() == n));
            }
        }
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
        assert!(compositions(2, 0).is_empty());
    }
}
