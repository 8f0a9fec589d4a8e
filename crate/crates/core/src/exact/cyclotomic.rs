//! Cyclotomic polynomials over the integers, and the index map induced by
//! negating roots of unity.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// The `index`-th cyclotomic polynomial, coefficients in increasing degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicPoly {
    pub index: u64,
    pub coeffs: Vec<i64>,
}

impl CyclotomicPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|i| i * i <= n).filter(|i| n % i == 0).collect();
    let upper: Vec<u64> = out.iter().rev().map(|i| n / i).filter(|j| j * j != n).collect();
    out.extend(upper);
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Polynomial product over Z.
pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of `num` by a monic `den`; panics on nonzero remainder.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "non-exact cyclotomic division");
    quot
}

fn cache() -> &'static Mutex<HashMap<u64, CyclotomicPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, CyclotomicPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Phi_d, obtained by dividing x^d - 1 by Phi_e for every proper divisor e.
pub fn cyclotomic(d: u64) -> CyclotomicPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().lock().unwrap().get(&d) {
        return p.clone();
    }
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in divisors(d) {
        if e != d {
            num = poly_div_exact(&num, &cyclotomic(e).coeffs);
        }
    }
    let p = CyclotomicPoly { index: d, coeffs: num };
    cache().lock().unwrap().insert(d, p.clone());
    p
}

/// Index d' such that the roots of Phi_{d'} are the negatives of the roots
/// of Phi_d.
pub fn negate_cyclotomic_index(d: u64) -> u64 {
    assert!(d >= 1);
    if d % 2 == 1 {
        2 * d
    } else if d % 4 == 2 {
        d / 2
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).coeffs, vec![-1, 1]);
        assert_eq!(cyclotomic(2).coeffs, vec![1, 1]);
        assert_eq!(cyclotomic(4).coeffs, vec![1, 0, 1]);
        assert_eq!(cyclotomic(12).coeffs, vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic(105).degree(), 48);
        assert!(cyclotomic(105).coeffs.contains(&-2));
    }

    #[test]
    fn product_over_divisors() {
        for d in 1..=200u64 {
            let prod = divisors(d)
                .into_iter()
                .fold(vec![1i64], |acc, e| poly_mul(&acc, &cyclotomic(e).coeffs));
            let mut expected = vec![0i64; d as usize + 1];
            expected[0] = -1;
            expected[d as usize] = 1;
            assert_eq!(prod, expected, "d={d}");
            assert_eq!(cyclotomic(d).degree() as u64, euler_phi(d));
        }
    }

    #[test]
    fn negation_index() {
        assert_eq!(negate_cyclotomic_index(1), 2);
        assert_eq!(negate_cyclotomic_index(3), 6);
        assert_eq!(negate_cyclotomic_index(4), 4);
        for d in 1..500 {
            assert_eq!(negate_cyclotomic_index(negate_cyclotomic_index(d)), d);
            assert_eq!(euler_phi(negate_cyclotomic_index(d)), euler_phi(d));
        }
    }

    #[test]
    fn negation_matches_root_substitution() {
        // Phi_{d'}(x) = ±Phi_d(-x)
        for d in 1..=60u64 {
            let p = cyclotomic(d).coeffs;
            let neg: Vec<i64> = p
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { *c })
                .collect();
            let q = cyclotomic(negate_cyclotomic_index(d)).coeffs;
            let sign = if neg.last() == Some(&1) { 1 } else { -1 };
            let neg: Vec<i64> = neg.into_iter().map(|c| sign * c).collect();
            assert_eq!(neg, q, "d={d}");
        }
    }
}
