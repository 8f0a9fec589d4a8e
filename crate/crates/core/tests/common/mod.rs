//! Independent oracles shared by the integration tests. None of these call
//! into the library's own algorithms.
#![allow(dead_code)]

use agcoh::exact::Rational;
use agcoh::spin::Sign;

/// Bernoulli numbers B_0..=B_n (B_1 = +1/2) by the Akiyama-Tanigawa
/// triangle.
pub fn bernoulli_table(n: usize) -> Vec<Rational> {
    let mut a: Vec<Rational> = Vec::new();
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(Rational::new(1, m as i64 + 1));
        for j in (1..=m).rev() {
            let diff = a[j - 1].clone() - a[j].clone();
            a[j - 1] = Rational::from(j as i64) * diff;
        }
        out.push(a[0].clone());
    }
    out
}

/// zeta(1 - 2j) = -B_{2j} / 2j.
pub fn zeta_odd_negative(j: usize) -> Rational {
    let b = bernoulli_table(2 * j);
    -(b[2 * j].clone() / Rational::from(2 * j as i64))
}

/// (-1)^N 2^{-g} prod zeta(1 - 2j), N = g(g+1)/2.
pub fn proportionality_oracle(g: usize) -> Rational {
    let n = g * (g + 1) / 2;
    let mut c = Rational::one();
    for j in 1..=g {
        c = c * zeta_odd_negative(j) / Rational::from(2);
    }
    if n % 2 == 1 {
        -c
    } else {
        c
    }
}

fn elementary(vals: &[i64], k: usize) -> i64 {
    let mut e = vec![0i64; k + 1];
    e[0] = 1;
    for &v in vals {
        for i in (1..=k).rev() {
            e[i] += e[i - 1] * v;
        }
    }
    e[k]
}

/// Integral of prod c_i(L)^{n_i} over the Lagrangian Grassmannian LG(g, 2g)
/// by torus localization at its 2^g fixed points.
fn localize(g: usize, exponents: &[u32]) -> Rational {
    let t: Vec<i64> = (1..=g as i64).collect();
    let mut total = Rational::zero();
    for signs in 0u32..1 << g {
        let w: Vec<i64> = (0..g).map(|i| if signs >> i & 1 == 1 { -t[i] } else { t[i] }).collect();
        let mut num = Rational::one();
        for (k, &n) in exponents.iter().enumerate() {
            num = num * Rational::from(elementary(&w, k + 1)).pow(n as i32);
        }
        let mut den = Rational::one();
        for i in 0..g {
            for j in i..g {
                den = den * Rational::from(-(w[i] + w[j]));
            }
        }
        total += num / den;
    }
    total
}

/// Degree of u^n on the compact dual, normalized so u_1 ... u_g has degree 1.
pub fn compact_dual_oracle(g: usize, exponents: &[u32]) -> Rational {
    localize(g, exponents) / localize(g, &vec![1; g])
}

/// All (n_1, ..., n_g) with sum i n_i = g(g+1)/2.
pub fn top_monomials(g: usize) -> Vec<Vec<u32>> {
    fn rec(i: usize, g: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i > g {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for n in 0..=left / i {
            cur.push(n as u32);
            rec(i + 1, g, left - n * i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, g, g * (g + 1) / 2, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of k into distinct parts from 1..=g.
pub fn strict_partitions(g: usize, k: usize) -> u64 {
    let mut c = vec![0u64; k + 1];
    c[0] = 1;
    for part in 1..=g {
        for x in (part..=k).rev() {
            c[x] += c[x - part];
        }
    }
    c[k]
}

pub fn all_sign_vectors(r: usize) -> Vec<Vec<Sign>> {
    (0..1u32 << r)
        .map(|b| (0..r).map(|i| if b >> i & 1 == 0 { Sign::Plus } else { Sign::Minus }).collect())
        .collect()
}

/// Value in degree k of the polynomial algebra on generators of the given
/// degrees, by brute-force enumeration of exponent vectors.
pub fn monomial_count(gens: &[usize], k: usize) -> u64 {
    fn rec(gens: &[usize], left: usize) -> u64 {
        match gens.split_first() {
            None => (left == 0) as u64,
            Some((&d, rest)) => (0..=left / d).map(|m| rec(rest, left - m * d)).sum(),
        }
    }
    rec(gens, k)
}
