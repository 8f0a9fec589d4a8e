//! Irreducible representations V_lambda of Sp(2g).

mod cache;
mod character;
mod freudenthal;

use std::fmt;

use num::bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

pub use cache::{WeightCache, CACHE_DIR_ENV, CACHE_FORMAT_VERSION};
pub use character::{character_at_torsion, character_from_exponents, character_from_weights};
pub use freudenthal::{
    dominant_representative, weight_multiplicities, weight_multiplicities_with_limit, WeightSystem,
    DEFAULT_WEIGHT_LIMIT,
};

/// Dominant weight lambda_1 >= ... >= lambda_g >= 0 of Sp(2g).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct HighestWeight {
    lambda: Vec<i64>,
}

impl HighestWeight {
    pub fn new(lambda: Vec<i64>) -> Result<HighestWeight> {
        if lambda.is_empty() {
            return Err(Error::InvalidHighestWeight("genus must be at least 1".into()));
        }
        if lambda.iter().any(|&x| x < 0) {
            return Err(Error::InvalidHighestWeight(format!("{lambda:?} has a negative entry")));
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidHighestWeight(format!("{lambda:?} is not nonincreasing")));
        }
        Ok(HighestWeight { lambda })
    }

    /// The trivial representation of Sp(2g).
    pub fn zero(g: usize) -> HighestWeight {
        HighestWeight { lambda: vec![0; g] }
    }

    pub fn genus(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    /// w(lambda) = lambda_1 + ... + lambda_g.
    pub fn weight(&self) -> i64 {
        self.lambda.iter().sum()
    }

    /// rho = (g, g-1, ..., 1).
    pub fn rho(&self) -> Vec<i64> {
        let g = self.genus() as i64;
        (0..g).map(|i| g - i).collect()
    }

    /// tau = lambda + rho, strictly decreasing positive integers.
    pub fn tau(&self) -> Vec<i64> {
        self.lambda.iter().zip(self.rho()).map(|(l, r)| l + r).collect()
    }
}

impl TryFrom<Vec<i64>> for HighestWeight {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<HighestWeight> {
        HighestWeight::new(v)
    }
}

impl From<HighestWeight> for Vec<i64> {
    fn from(hw: HighestWeight) -> Vec<i64> {
        hw.lambda
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lambda.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for HighestWeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<HighestWeight> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let lambda = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidHighestWeight(format!("cannot parse `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        HighestWeight::new(lambda)
    }
}

/// dim V_lambda by the Weyl dimension formula for type C_g.
pub fn weyl_dimension(hw: &HighestWeight) -> BigInt {
    let l = hw.tau();
    let r = hw.rho();
    let g = l.len();
    let mut acc = Rational::one();
    for i in 0..g {
        acc = acc * Rational::new(l[i], r[i]);
        for j in i + 1..g {
            acc = acc * Rational::new((l[i] - l[j]) * (l[i] + l[j]), (r[i] - r[j]) * (r[i] + r[j]));
        }
    }
    acc.to_integer().expect("Weyl dimension is an integer")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hw(v: &[i64]) -> HighestWeight {
        HighestWeight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dimension(&hw(&[0])), BigInt::from(1));
        assert_eq!(weyl_dimension(&hw(&[1, 0])), BigInt::from(4));
        assert_eq!(weyl_dimension(&hw(&[1, 1])), BigInt::from(5));
        assert_eq!(weyl_dimension(&hw(&[2, 0])), BigInt::from(10));
        assert_eq!(weyl_dimension(&hw(&[1, 1, 1])), BigInt::from(14));
    }

    #[test]
    fn validation() {
        assert!(HighestWeight::new(vec![1, 2]).is_err());
        assert!(HighestWeight::new(vec![1, -1]).is_err());
        assert!(HighestWeight::new(vec![]).is_err());
        let h: HighestWeight = "2,1,0".parse().unwrap();
        assert_eq!(h.tau(), vec![5, 3, 1]);
        assert_eq!(h.weight(), 3);
        assert_eq!(h.to_string(), "(2,1,0)");
    }
}
