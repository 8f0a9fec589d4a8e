//! Bernoulli numbers and special values of the Riemann zeta function at
//! negative odd integers.

use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::One;

use super::Rational;

fn cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// Binomial coefficient C(n, k) as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Double factorial n!! (with 0!! = (-1)!! = 1).
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

/// B_n in the convention x/(e^x - 1) = sum B_k x^k / k!, so B_1 = -1/2.
///
/// Values are memoized for the lifetime of the process.
pub fn bernoulli(n: usize) -> Rational {
    let mut table = cache().lock().expect("bernoulli cache poisoned");
    while table.len() <= n {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0 solved for B_m
        let m = table.len();
        let s: Rational = table
            .iter()
            .enumerate()
            .map(|(k, b)| b * Rational::from(binomial(m as u64 + 1, k as u64)))
            .sum();
        let b = -s / Rational::from(m as i64 + 1);
        table.push(b);
    }
    table[n].clone()
}

/// zeta(1 - 2j) = -B_{2j} / (2j) for j >= 1.
pub fn zeta_negative(j: usize) -> Rational {
    assert!(j >= 1, "zeta_negative expects j >= 1");
    -bernoulli(2 * j) / Rational::from(2 * j as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(12), q(-691, 2730));
        for n in (3..40).step_by(2) {
            assert!(bernoulli(n).is_zero(), "B_{n} should vanish");
        }
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_negative(1), q(-1, 12));
        assert_eq!(zeta_negative(2), q(1, 120));
        assert_eq!(zeta_negative(3), q(-1, 252));
    }

    #[test]
    fn recurrence_self_consistent() {
        for n in 1..=30u64 {
            let s: Rational = (0..=n)
                .map(|k| bernoulli(k as usize) * Rational::from(binomial(n + 1, k)))
                .sum();
            assert!(s.is_zero(), "recurrence fails at n={n}");
        }
    }

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(double_factorial(5), BigInt::from(15));
        assert_eq!(double_factorial(-1), BigInt::from(1));
    }
}
