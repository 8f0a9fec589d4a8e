//! Exact character values at torsion elements, computed in Z[x]/(x^N - 1)
//! and reduced modulo the N-th cyclotomic polynomial.

use std::collections::{BTreeMap, HashMap};

use num::bigint::BigInt;

use super::{weight_multiplicities, HighestWeight, WeightSystem};
use crate::error::{Error, Result};
use crate::exact::cyclotomic;
use crate::torsion::TorsionClass;

/// tr(c | V_lambda) for a torsion class c of Sp(2g).
pub fn character_at_torsion(hw: &HighestWeight, class: &TorsionClass) -> Result<BigInt> {
    if class.genus() != hw.genus() {
        return Err(Error::GenusMismatch { left: hw.genus(), right: class.genus() });
    }
    character_from_weights(&weight_multiplicities(hw)?, class)
}

/// Same as [`character_at_torsion`] with a precomputed weight system.
pub fn character_from_weights(ws: &WeightSystem, class: &TorsionClass) -> Result<BigInt> {
    if class.genus() != ws.genus {
        return Err(Error::GenusMismatch { left: ws.genus, right: class.genus() });
    }
    let (n, exps) = class.eigen_exponents();
    character_from_exponents(ws, n, &exps)
}

/// Character at the element with eigenvalues zeta_n^{e_k}, zeta_n^{-e_k}
/// (k = 1..g), for any primitive n-th root of unity zeta_n.
pub fn character_from_exponents(ws: &WeightSystem, n: u64, exps: &[u64]) -> Result<BigInt> {
    assert_eq!(exps.len(), ws.genus, "one exponent per eigenvalue pair");
    let n = n as usize;
    let mut acc = vec![0i128; n];
    for (mu, &m) in &ws.dominant {
        let orbit = orbit_sum(mu, exps, n);
        for (a, o) in acc.iter_mut().zip(orbit) {
            *a += m as i128 * o;
        }
    }
    let rem = reduce_cyclotomic(&acc, n as u64);
    if rem.iter().skip(1).any(|&c| c != 0) {
        return Err(Error::NonIntegralCharacter(format!(
            "residue {rem:?} modulo the {n}-th cyclotomic polynomial"
        )));
    }
    Ok(BigInt::from(rem.first().copied().unwrap_or(0)))
}

/// sum over the signed-permutation orbit of mu of prod_k x^{nu_k e_k}, in Z[x]/(x^n - 1).
fn orbit_sum(mu: &[i64], exps: &[u64], n: usize) -> Vec<i128> {
    let mut counts: BTreeMap<i64, u32> = BTreeMap::new();
    for &x in mu {
        *counts.entry(x).or_default() += 1;
    }
    let values: Vec<i64> = counts.keys().copied().collect();
    let start: Vec<u32> = counts.values().copied().collect();

    let mut unit = vec![0i128; n];
    unit[0] = 1;
    let mut layer: HashMap<Vec<u32>, Vec<i128>> = HashMap::from([(start, unit)]);
    for &e in exps {
        let mut next: HashMap<Vec<u32>, Vec<i128>> = HashMap::new();
        for (state, poly) in layer {
            for (vi, &a) in values.iter().enumerate() {
                if state[vi] == 0 {
                    continue;
                }
                let mut s = state.clone();
                s[vi] -= 1;
                let target = next.entry(s).or_insert_with(|| vec![0; n]);
                let shift = (a.unsigned_abs() as usize % n) * (e as usize % n) % n;
                for (i, &c) in poly.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    if a == 0 {
                        target[i] += c;
                    } else {
                        target[(i + shift) % n] += c;
                        target[(i + n - shift) % n] += c;
                    }
                }
            }
        }
        layer = next;
    }
    layer.into_values().next().unwrap_or_else(|| vec![0; n])
}

/// Remainder of `p` modulo Phi_n, of length phi(n).
fn reduce_cyclotomic(p: &[i128], n: u64) -> Vec<i128> {
    let phi = cyclotomic(n).coeffs;
    let deg = phi.len() - 1;
    let mut rem: Vec<i128> = p.to_vec();
    for k in (deg..rem.len()).rev() {
        let c = rem[k];
        if c != 0 {
            for (j, &pj) in phi.iter().enumerate() {
                rem[k - deg + j] -= c * pj as i128;
            }
        }
    }
    rem.truncate(deg.max(1));
    rem
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::weyl_dimension;

    fn hw(v: &[i64]) -> HighestWeight {
        HighestWeight::new(v.to_vec()).unwrap()
    }

    fn class(s: &str) -> TorsionClass {
        s.parse().unwrap()
    }

    #[test]
    fn identity_and_minus_identity() {
        for lam in [vec![0, 0], vec![2, 1], vec![3, 3], vec![4, 1]] {
            let h = hw(&lam);
            let dim = weyl_dimension(&h);
            assert_eq!(character_at_torsion(&h, &class("1^4")).unwrap(), dim);
            let sign = if h.weight() % 2 == 0 { 1 } else { -1 };
            assert_eq!(character_at_torsion(&h, &class("2^4")).unwrap(), dim * sign);
        }
    }

    #[test]
    fn order_four_in_sl2() {
        assert_eq!(character_at_torsion(&hw(&[2]), &class("4^1")).unwrap(), BigInt::from(-1));
        assert_eq!(character_at_torsion(&hw(&[1]), &class("4^1")).unwrap(), BigInt::from(0));
        assert_eq!(character_at_torsion(&hw(&[1]), &class("3^1")).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn genus_mismatch() {
        assert!(character_at_torsion(&hw(&[1, 0]), &class("4^1")).is_err());
    }

    #[test]
    fn reduction() {
        // x^2 + 1 + x^2 modulo x^2 + 1
        assert_eq!(reduce_cyclotomic(&[1, 0, 2, 0], 4), vec![-1, 0]);
        assert_eq!(reduce_cyclotomic(&[5], 1), vec![5]);
    }
}
