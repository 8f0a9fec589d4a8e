//! Weight multiplicities by Freudenthal's recursion, run over dominant
//! weights only.

use std::collections::{BTreeMap, HashMap};

use num::bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::HighestWeight;
use crate::error::{Error, Result};
use crate::exact::factorial;

/// Default cap on the number of weights (dominant, or expanded) a single
/// computation may produce.
pub const DEFAULT_WEIGHT_LIMIT: usize = 2_000_000;

/// Weight multiplicities of V_lambda, stored on dominant weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSystem {
    pub genus: usize,
    pub lambda: Vec<i64>,
    /// Dominant weight -> multiplicity, all multiplicities positive.
    pub dominant: BTreeMap<Vec<i64>, u64>,
}

/// Sorted absolute values, largest first.
pub fn dominant_representative(mu: &[i64]) -> Vec<i64> {
    let mut v: Vec<i64> = mu.iter().map(|x| x.abs()).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Size of the orbit of a dominant weight under signed permutations.
fn orbit_size(mu: &[i64]) -> BigInt {
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for &x in mu {
        *counts.entry(x).or_default() += 1;
    }
    let nonzero = mu.iter().filter(|&&x| x != 0).count() as u32;
    let denom = counts.values().fold(BigInt::from(1), |acc, &c| acc * factorial(c));
    factorial(mu.len() as u64) / denom * BigInt::from(2).pow(nonzero)
}

impl WeightSystem {
    pub fn multiplicity(&self, mu: &[i64]) -> u64 {
        self.dominant.get(&dominant_representative(mu)).copied().unwrap_or(0)
    }

    /// Sum of all multiplicities, equal to dim V_lambda.
    pub fn total(&self) -> BigInt {
        self.dominant.iter().map(|(mu, &m)| orbit_size(mu) * BigInt::from(m)).sum()
    }

    /// Number of distinct weights.
    pub fn weight_count(&self) -> BigInt {
        self.dominant.keys().map(|mu| orbit_size(mu)).sum()
    }

    /// Every weight with its multiplicity. Errors out if more than `limit`
    /// distinct weights would be produced.
    pub fn expand(&self, limit: usize) -> Result<BTreeMap<Vec<i64>, u64>> {
        if self.weight_count() > BigInt::from(limit) {
            return Err(Error::ResourceLimit(format!(
                "{} weights exceed the limit {limit}",
                self.weight_count()
            )));
        }
        let mut out = BTreeMap::new();
        for (mu, &m) in &self.dominant {
            for w in signed_permutations(mu) {
                out.insert(w, m);
            }
        }
        Ok(out)
    }
}

fn signed_permutations(mu: &[i64]) -> Vec<Vec<i64>> {
    let mut perms: Vec<Vec<i64>> = Vec::new();
    let mut sorted = mu.to_vec();
    sorted.sort_unstable();
    loop {
        perms.push(sorted.clone());
        if !next_permutation(&mut sorted) {
            break;
        }
    }
    let mut out = Vec::new();
    for p in perms {
        let nz: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
        for signs in 0u64..(1 << nz.len()) {
            let mut w = p.clone();
            for (b, &i) in nz.iter().enumerate() {
                if signs & (1 << b) != 0 {
                    w[i] = -w[i];
                }
            }
            out.push(w);
        }
    }
    out
}

fn next_permutation(v: &mut [i64]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Dominant mu <= lambda: lambda - mu is a nonnegative combination of the
/// simple roots e_i - e_{i+1} and 2e_g.
fn dominant_weights_below(lambda: &[i64], limit: usize) -> Result<Vec<Vec<i64>>> {
    let g = lambda.len();
    let prefix: Vec<i64> = lambda
        .iter()
        .scan(0, |s, &x| {
            *s += x;
            Some(*s)
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; g];
    fn rec(
        i: usize,
        sum: i64,
        cur: &mut Vec<i64>,
        prefix: &[i64],
        out: &mut Vec<Vec<i64>>,
        limit: usize,
    ) -> Result<()> {
        let g = cur.len();
        if i == g {
            if (prefix[g - 1] - sum) % 2 == 0 {
                if out.len() >= limit {
                    return Err(Error::ResourceLimit(format!(
                        "more than {limit} dominant weights"
                    )));
                }
                out.push(cur.clone());
            }
            return Ok(());
        }
        let cap = prefix[i] - sum;
        let top = if i == 0 { cap } else { cap.min(cur[i - 1]) };
        for x in (0..=top).rev() {
            cur[i] = x;
            rec(i + 1, sum + x, cur, prefix, out, limit)?;
        }
        cur[i] = 0;
        Ok(())
    }
    rec(0, 0, &mut cur, &prefix, &mut out, limit)?;
    Ok(out)
}

fn depth(lambda: &[i64], mu: &[i64]) -> i64 {
    let g = lambda.len();
    let mut s = 0;
    let mut d = 0;
    for i in 0..g {
        s += lambda[i] - mu[i];
        d += if i + 1 < g { s } else { s / 2 };
    }
    d
}

fn positive_roots(g: usize) -> Vec<Vec<i64>> {
    let mut roots = Vec::new();
    for i in 0..g {
        for j in i + 1..g {
            let mut a = vec![0; g];
            a[i] = 1;
            a[j] = -1;
            roots.push(a.clone());
            a[j] = 1;
            roots.push(a);
        }
        let mut a = vec![0; g];
        a[i] = 2;
        roots.push(a);
    }
    roots
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn weight_multiplicities(hw: &HighestWeight) -> Result<WeightSystem> {
    weight_multiplicities_with_limit(hw, DEFAULT_WEIGHT_LIMIT)
}

/// Freudenthal's formula
/// `m(mu) = 2 sum_{alpha>0} sum_{k>=1} m(mu + k alpha)(mu + k alpha, alpha) / (|lambda+rho|^2 - |mu+rho|^2)`.
pub fn weight_multiplicities_with_limit(hw: &HighestWeight, limit: usize) -> Result<WeightSystem> {
    let lambda = hw.lambda().to_vec();
    let rho = hw.rho();
    let mut dominant = dominant_weights_below(&lambda, limit)?;
    dominant.sort_by_key(|mu| depth(&lambda, mu));

    let shifted = |mu: &[i64]| -> i64 {
        mu.iter().zip(&rho).map(|(m, r)| (m + r) * (m + r)).sum()
    };
    let top = shifted(&lambda);
    let roots = positive_roots(hw.genus());
    let mut mult: HashMap<Vec<i64>, i128> = HashMap::new();
    mult.insert(lambda.clone(), 1);
    for mu in dominant.iter().skip(1) {
        let mut acc: i128 = 0;
        for alpha in &roots {
            let mut k = 1;
            loop {
                let nu: Vec<i64> = mu.iter().zip(alpha).map(|(m, a)| m + k * a).collect();
                let Some(&m) = mult.get(&dominant_representative(&nu)) else {
                    break;
                };
                acc += m * dot(&nu, alpha) as i128;
                k += 1;
            }
        }
        let denom = (top - shifted(mu)) as i128;
        assert!(denom > 0 && (2 * acc) % denom == 0, "Freudenthal step not integral at {mu:?}");
        mult.insert(mu.clone(), 2 * acc / denom);
    }
    let dominant = mult
        .into_iter()
        .filter(|(_, m)| *m > 0)
        .map(|(mu, m)| (mu, u64::try_from(m).expect("multiplicity fits in u64")))
        .collect();
    Ok(WeightSystem { genus: hw.genus(), lambda, dominant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::weyl_dimension;

    fn ws(v: &[i64]) -> WeightSystem {
        weight_multiplicities(&HighestWeight::new(v.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn rank_one() {
        let w = ws(&[2]).expand(100).unwrap();
        let expected: BTreeMap<Vec<i64>, u64> =
            [(vec![-2], 1), (vec![0], 1), (vec![2], 1)].into_iter().collect();
        assert_eq!(w, expected);
    }

    #[test]
    fn standard_and_exterior() {
        let w = ws(&[1, 0]).expand(100).unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.values().all(|&m| m == 1));
        assert!(w.contains_key(&vec![0, -1]));

        let w = ws(&[1, 1]);
        assert_eq!(w.multiplicity(&[0, 0]), 1);
        assert_eq!(w.multiplicity(&[1, -1]), 1);
        assert_eq!(w.multiplicity(&[1, 0]), 0);
        assert_eq!(w.total(), BigInt::from(5));
    }

    #[test]
    fn adjoint_of_sp4() {
        // Sym^2 of the standard: zero weight has multiplicity 2
        let w = ws(&[2, 0]);
        assert_eq!(w.multiplicity(&[0, 0]), 2);
        assert_eq!(w.total(), BigInt::from(10));
    }

    #[test]
    fn totals_match_weyl() {
        for lam in [vec![3, 1, 0], vec![2, 2, 1], vec![4, 2, 2, 1], vec![1, 1, 1, 1, 1]] {
            let hw = HighestWeight::new(lam).unwrap();
            assert_eq!(weight_multiplicities(&hw).unwrap().total(), weyl_dimension(&hw));
        }
    }

    #[test]
    fn limit_is_enforced() {
        let hw = HighestWeight::new(vec![6, 4, 2]).unwrap();
        assert!(matches!(weight_multiplicities_with_limit(&hw, 3), Err(Error::ResourceLimit(_))));
        assert!(weight_multiplicities(&hw).unwrap().expand(10).is_err());
    }
}
