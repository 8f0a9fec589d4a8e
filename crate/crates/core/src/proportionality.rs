//! Top intersection numbers of lambda-classes by proportionality with the
//! compact dual, and the related volume and dimension constants.

use std::fmt;

use num::bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{bernoulli, double_factorial, factorial, zeta_negative, Rational};
use crate::taut::{normal_form, top_degree};

/// `rational * pi^pi_exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiScaledRational {
    pub rational: Rational,
    pub pi_exponent: i64,
}

impl fmt::Display for PiScaledRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_exponent {
            0 => write!(f, "{}", self.rational),
            1 => write!(f, "{}*pi", self.rational),
            e => write!(f, "{}*pi^{}", self.rational, e),
        }
    }
}

fn check_degree(g: usize, exponents: &[u32]) -> Result<()> {
    if exponents.len() > g && exponents[g..].iter().any(|&n| n > 0) {
        return Err(Error::Validation(format!(
            "exponent vector has {} entries for genus {g}",
            exponents.len()
        )));
    }
    let got: usize = exponents.iter().enumerate().map(|(i, &n)| (i + 1) * n as usize).sum();
    let expected = top_degree(g);
    if got != expected {
        return Err(Error::DegreeMismatch { expected, got });
    }
    Ok(())
}

/// Degree of u_1^{n_1} ... u_g^{n_g} on the compact dual, with the socle
/// u_1 ... u_g normalized to 1.
pub fn compact_dual_degree(g: usize, exponents: &[u32]) -> Result<Rational> {
    check_degree(g, exponents)?;
    Ok(normal_form(&[(exponents.to_vec(), Rational::one())], g).socle_coefficient())
}

/// (-1)^{g(g+1)/2} 2^{-g} prod_{j=1}^{g} zeta(1 - 2j).
pub fn proportionality_constant(g: usize) -> Rational {
    let sign = if top_degree(g) % 2 == 0 { 1 } else { -1 };
    let prod: Rational = (1..=g).map(zeta_negative).product();
    prod * Rational::from(sign) / Rational::from(BigInt::from(2).pow(g as u32))
}

/// lambda_1^{n_1} ... lambda_g^{n_g} on a smooth toroidal compactification
/// of A_g, counted as a stack.
pub fn lambda_intersection(g: usize, exponents: &[u32]) -> Result<Rational> {
    Ok(compact_dual_degree(g, exponents)? * proportionality_constant(g))
}

/// lambda_1^{g(g+1)/2}, by the closed product formula.
pub fn lambda1_power(g: usize) -> Rational {
    let n = top_degree(g) as u64;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let mut acc = Rational::from(factorial(n) * sign)
        / Rational::from(BigInt::from(2).pow(g as u32));
    for k in 1..=g {
        acc = acc * zeta_negative(k) / Rational::from(double_factorial(2 * k as i64 - 1));
    }
    acc
}

/// prod_{j=1}^{g} ((j-1)!/(2j)!) (-1)^{j-1} B_{2j}.
fn bernoulli_product(g: usize) -> Rational {
    (1..=g)
        .map(|j| {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            Rational::from(factorial(j as u64 - 1)) / Rational::from(factorial(2 * j as u64))
                * bernoulli(2 * j)
                * Rational::from(sign)
        })
        .product()
}

/// Leading behaviour dim M_k(Sp_2g(Z)) ~ c * k^e; returns (c, e).
pub fn modular_form_asymptotics(g: usize) -> (Rational, usize) {
    assert!(g >= 1);
    let pow = ((g - 1) * g.saturating_sub(2) / 2) as u32;
    let c = Rational::from(BigInt::from(2).pow(pow)) * bernoulli_product(g);
    (c, top_degree(g))
}

/// Siegel's volume V_g = 2^{g^2+1} pi^{g(g+1)/2} prod ((j-1)!/(2j)!) (-1)^{j-1} B_{2j}.
pub fn siegel_volume(g: usize) -> PiScaledRational {
    assert!(g >= 1);
    let rational = Rational::from(BigInt::from(2).pow((g * g + 1) as u32)) * bernoulli_product(g);
    PiScaledRational { rational, pi_exponent: top_degree(g) as i64 }
}

/// All exponent vectors (n_1, ..., n_g) with sum i n_i = g(g+1)/2.
pub fn top_exponent_vectors(g: usize) -> Vec<Vec<u32>> {
    fn rec(i: usize, remaining: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for n in 0..=remaining / i {
            cur[i - 1] = n as u32;
            rec(i - 1, remaining - n * i, cur, out);
        }
        cur[i - 1] = 0;
    }
    let mut out = Vec::new();
    rec(g, top_degree(g), &mut vec![0; g], &mut out);
    out.sort();
    out
}
