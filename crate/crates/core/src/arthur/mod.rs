//! Level-one Arthur parameters psi = pi_0[d_0] + ... + pi_r[d_r] for Sp(2g)
//! with regular integral infinitesimal character tau = lambda + rho.
//!
//! Weights of building blocks are half-integers in general and are stored
//! doubled throughout.

mod enumerate;
mod registry;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use enumerate::{enumerate_parameters, even_weight_lambdas};
pub use registry::{BlockRecord, Registry, RegistryFile, BUILTIN_BOUND_DOUBLED, REGISTRY_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    /// Cuspidal on GL_{2n+1}, dual group SO_{2n+1}.
    OddOrthogonal,
    /// Cuspidal on GL_{4n}, dual group SO_{4n}.
    EvenOrthogonal,
    /// Cuspidal on GL_{2n}, dual group Sp_{2n}.
    Symplectic,
}

impl BlockKind {
    pub fn short(self) -> &'static str {
        match self {
            BlockKind::OddOrthogonal => "Oo",
            BlockKind::EvenOrthogonal => "Oe",
            BlockKind::Symplectic => "S",
        }
    }
}

/// A set of building blocks, identified by kind and doubled weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockKey {
    pub kind: BlockKind,
    pub doubled_weights: Vec<u32>,
}

impl BlockKey {
    pub fn new(kind: BlockKind, doubled_weights: Vec<u32>) -> BlockKey {
        BlockKey { kind, doubled_weights }
    }

    pub fn trivial() -> BlockKey {
        BlockKey::new(BlockKind::OddOrthogonal, Vec::new())
    }

    pub fn is_trivial(&self) -> bool {
        self.kind == BlockKind::OddOrthogonal && self.doubled_weights.is_empty()
    }

    /// Dimension of the standard representation of the dual group.
    pub fn standard_dim(&self) -> usize {
        let n = self.doubled_weights.len();
        match self.kind {
            BlockKind::OddOrthogonal => 2 * n + 1,
            _ => 2 * n,
        }
    }

    /// Doubled top weight (0 for the trivial block).
    pub fn top(&self) -> u32 {
        self.doubled_weights.first().copied().unwrap_or(0)
    }

    /// Structural checks: ordering, integrality, and the weight count.
    pub fn validate(&self) -> Result<()> {
        let w = &self.doubled_weights;
        if w.windows(2).any(|p| p[0] <= p[1]) || w.iter().any(|&x| x == 0) {
            return Err(Error::InvalidBlock(format!("{self}: weights must be strictly decreasing and positive")));
        }
        match self.kind {
            BlockKind::Symplectic => {
                if w.is_empty() || w.iter().any(|x| x % 2 == 0) {
                    return Err(Error::InvalidBlock(format!("{self}: symplectic weights lie in 1/2 + Z")));
                }
            }
            BlockKind::OddOrthogonal | BlockKind::EvenOrthogonal => {
                if w.iter().any(|x| x % 2 == 1) {
                    return Err(Error::InvalidBlock(format!("{self}: orthogonal weights are integers")));
                }
                if self.kind == BlockKind::EvenOrthogonal && (w.is_empty() || w.len() % 2 == 1) {
                    return Err(Error::InvalidBlock(format!(
                        "{self}: even orthogonal blocks have an even, nonzero number of weights"
                    )));
                }
            }
        }
        Ok(())
    }

    /// False when the parity constraint forces the set to be empty.
    pub fn parity_allows(&self) -> bool {
        let n = self.doubled_weights.len() as u64;
        let sum: u64 = self.doubled_weights.iter().map(|&x| x as u64 / 2).sum();
        match self.kind {
            BlockKind::OddOrthogonal => sum % 2 == (n * (n + 1) / 2) % 2,
            BlockKind::EvenOrthogonal => sum % 2 == (n / 2) % 2,
            BlockKind::Symplectic => true,
        }
    }
}

pub(crate) fn format_doubled(x: u32) -> String {
    if x % 2 == 0 {
        (x / 2).to_string()
    } else {
        format!("{x}/2")
    }
}

impl fmt::Display for BlockKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.doubled_weights.iter().map(|&x| format_doubled(x)).collect();
        write!(f, "{}({})", self.kind.short(), w.join(","))
    }
}

/// One factor pi[d] of a parameter, with the block set it draws from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor {
    pub block: BlockKey,
    pub d: u32,
    pub label: String,
    pub cardinality: u64,
    pub field_degree: Option<u32>,
}

impl Factor {
    /// Text form, e.g. `D11[2]`, or `[9]` for the trivial block.
    pub fn shape(&self) -> String {
        if self.block.is_trivial() {
            format!("[{}]", self.d)
        } else {
            format!("{}[{}]", self.label, self.d)
        }
    }

    /// Dimension of Std tensor nu_d.
    pub fn dim(&self) -> usize {
        self.block.standard_dim() * self.d as usize
    }

    /// The positive integers covered by this factor.
    pub fn weight_block(&self, principal: bool) -> Result<BTreeSet<i64>> {
        weight_block(self.block.kind, &self.block.doubled_weights, self.d, principal)
    }
}

/// A parameter shape: principal factor plus the other factors in canonical
/// order (decreasing top weight, then decreasing d).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArthurParameter {
    pub principal: Factor,
    pub others: Vec<Factor>,
}

impl ArthurParameter {
    pub fn new(principal: Factor, mut others: Vec<Factor>) -> ArthurParameter {
        others.sort_by(|a, b| (b.block.top(), b.d, &b.block).cmp(&(a.block.top(), a.d, &a.block)));
        ArthurParameter { principal, others }
    }

    /// The trivial parameter [2g+1].
    pub fn trivial(g: usize) -> ArthurParameter {
        ArthurParameter::new(
            Factor {
                block: BlockKey::trivial(),
                d: 2 * g as u32 + 1,
                label: "1".into(),
                cardinality: 1,
                field_degree: Some(1),
            },
            Vec::new(),
        )
    }

    pub fn r(&self) -> usize {
        self.others.len()
    }

    /// Product of the cardinalities of the referenced blocks.
    pub fn multiplicity(&self) -> u64 {
        self.factors().map(|f| f.cardinality).product()
    }

    pub fn factors(&self) -> impl Iterator<Item = &Factor> {
        std::iter::once(&self.principal).chain(&self.others)
    }

    /// Canonical text, e.g. `D11[2]+[9]`.
    pub fn shape(&self) -> String {
        let mut parts: Vec<String> = self.others.iter().map(Factor::shape).collect();
        parts.push(self.principal.shape());
        parts.join("+")
    }

    /// 2g + 1 = sum of dim(Std) * d over the factors.
    pub fn standard_dim(&self) -> usize {
        self.factors().map(Factor::dim).sum()
    }

    pub fn genus(&self) -> usize {
        (self.standard_dim() - 1) / 2
    }

    /// Union of the weight blocks; errors if two of them meet.
    pub fn weight_set(&self) -> Result<BTreeSet<i64>> {
        let mut all = self.principal.weight_block(true)?;
        for f in &self.others {
            for v in f.weight_block(false)? {
                if !all.insert(v) {
                    return Err(Error::InvalidBlock(format!("{}: weight {v} covered twice", self.shape())));
                }
            }
        }
        Ok(all)
    }

    /// Degree of the field of coefficients, when every block is rational.
    pub fn field_degree(&self) -> Option<u32> {
        self.factors().all(|f| f.field_degree == Some(1)).then_some(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.others.is_empty() && self.principal.block.is_trivial()
    }
}

impl fmt::Display for ArthurParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.shape())
    }
}

/// {v_k + (d-1)/2 - j : k, 0 <= j < d}, plus {(d-1)/2, ..., 1} for the
/// principal factor.
pub fn weight_block(kind: BlockKind, doubled: &[u32], d: u32, principal: bool) -> Result<BTreeSet<i64>> {
    if d == 0 {
        return Err(Error::InvalidBlock("d must be positive".into()));
    }
    match (kind, principal) {
        (BlockKind::OddOrthogonal, true) if d % 2 == 1 => {}
        (BlockKind::EvenOrthogonal, false) if d % 2 == 1 => {}
        (BlockKind::Symplectic, false) if d % 2 == 0 => {}
        _ => {
            return Err(Error::InvalidBlock(format!(
                "{kind:?} with d = {d} is not allowed {} factor",
                if principal { "as the principal" } else { "as a non-principal" }
            )))
        }
    }
    let mut out = BTreeSet::new();
    let mut push = |v2: i64| -> Result<()> {
        if v2 % 2 != 0 || v2 <= 0 {
            return Err(Error::InvalidBlock(format!("weight {v2}/2 is not a positive integer")));
        }
        if !out.insert(v2 / 2) {
            return Err(Error::InvalidBlock(format!("weight {} produced twice", v2 / 2)));
        }
        Ok(())
    };
    for &w in doubled {
        for j in 0..d as i64 {
            push(w as i64 + d as i64 - 1 - 2 * j)?;
        }
    }
    if principal {
        for v in 1..=(d as i64 - 1) / 2 {
            push(2 * v)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_blocks() {
        let s = weight_block(BlockKind::Symplectic, &[11], 2, false).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![5, 6]);
        let t = weight_block(BlockKind::OddOrthogonal, &[], 9, true).unwrap();
        assert_eq!(t.into_iter().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        let o = weight_block(BlockKind::OddOrthogonal, &[22], 1, true).unwrap();
        assert_eq!(o.into_iter().collect::<Vec<_>>(), vec![11]);
        assert!(weight_block(BlockKind::Symplectic, &[11], 3, false).is_err());
        assert!(weight_block(BlockKind::Symplectic, &[1], 4, false).is_err());
        assert!(weight_block(BlockKind::OddOrthogonal, &[2], 2, true).is_err());
    }

    #[test]
    fn parity() {
        assert!(BlockKey::new(BlockKind::OddOrthogonal, vec![22]).parity_allows());
        assert!(!BlockKey::new(BlockKind::OddOrthogonal, vec![20]).parity_allows());
        assert!(BlockKey::trivial().parity_allows());
        assert!(BlockKey::new(BlockKind::EvenOrthogonal, vec![8, 2]).parity_allows());
        assert!(!BlockKey::new(BlockKind::EvenOrthogonal, vec![8, 4]).parity_allows());
    }

    #[test]
    fn shapes() {
        let d11 = Factor {
            block: BlockKey::new(BlockKind::Symplectic, vec![11]),
            d: 2,
            label: "D11".into(),
            cardinality: 1,
            field_degree: Some(1),
        };
        let mut p = ArthurParameter::trivial(4);
        p.others.push(d11);
        assert_eq!(p.shape(), "D11[2]+[9]");
        assert_eq!(p.genus(), 6);
        assert_eq!(p.weight_set().unwrap().into_iter().collect::<Vec<_>>(), (1..=6).collect::<Vec<_>>());
    }
}
