//! Cardinalities of the building-block sets O_o, O_e and S.
//!
//! The built-in entries are the complete list of nonempty sets with top
//! weight at most 11. Further cardinalities, computed elsewhere, can be
//! merged from JSON.

use std::collections::BTreeMap;
use std::io::Read;

use serde::{Deserialize, Serialize};

use super::{format_doubled, BlockKey, BlockKind, Factor};
use crate::error::{Error, Result};

/// Version of the embedded block list.
pub const REGISTRY_VERSION: u32 = 1;

/// The built-in list is exhaustive for doubled top weight <= 22.
pub const BUILTIN_BOUND_DOUBLED: u32 = 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub kind: BlockKind,
    pub doubled_weights: Vec<u32>,
    pub cardinality: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_degree: Option<u32>,
}

impl BlockRecord {
    pub fn key(&self) -> BlockKey {
        BlockKey::new(self.kind, self.doubled_weights.clone())
    }
}

/// JSON accepted by [`Registry::ingest`]: either a bare array of records or
/// an object with the records and an optional raised completeness bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RegistryFile {
    Records(Vec<BlockRecord>),
    Extension {
        blocks: Vec<BlockRecord>,
        #[serde(default)]
        complete_up_to_doubled: Option<u32>,
    },
}

#[derive(Debug, Clone)]
pub struct Registry {
    blocks: BTreeMap<BlockKey, BlockRecord>,
    bound_doubled: u32,
    builtin_bound: u32,
    ingested: usize,
}

fn rec(kind: BlockKind, w: &[u32], name: &str) -> BlockRecord {
    BlockRecord {
        kind,
        doubled_weights: w.to_vec(),
        cardinality: 1,
        names: vec![name.to_string()],
        field_degree: Some(1),
    }
}

impl Registry {
    pub fn builtin() -> Registry {
        use BlockKind::*;
        let mut records = vec![rec(OddOrthogonal, &[], "1"), rec(OddOrthogonal, &[22], "Sym2D11")];
        for w in [11, 15, 17, 19, 21] {
            records.push(rec(Symplectic, &[w], &format!("D{w}")));
        }
        for (a, b) in [(19, 7), (21, 5), (21, 9), (21, 13)] {
            records.push(rec(Symplectic, &[a, b], &format!("D{a},{b}")));
        }
        Registry {
            blocks: records.into_iter().map(|r| (r.key(), r)).collect(),
            bound_doubled: BUILTIN_BOUND_DOUBLED,
            builtin_bound: BUILTIN_BOUND_DOUBLED,
            ingested: 0,
        }
    }

    /// Doubled w_1 up to which the registry is exhaustive.
    pub fn bound_doubled(&self) -> u32 {
        self.bound_doubled
    }

    pub fn records(&self) -> impl Iterator<Item = &BlockRecord> {
        self.blocks.values()
    }

    pub fn ingested_count(&self) -> usize {
        self.ingested
    }

    /// Cardinality of a block set: `Ok(None)` when the registry does not know it.
    pub fn cardinality(&self, key: &BlockKey) -> Result<Option<u64>> {
        key.validate()?;
        if !key.parity_allows() {
            return Ok(Some(0));
        }
        if let Some(r) = self.blocks.get(key) {
            return Ok(Some(r.cardinality));
        }
        Ok((key.top() <= self.bound_doubled).then_some(0))
    }

    /// Factor for `key[d]`, or `None` if the set is empty. Unknown sets
    /// are a registry-incompleteness error.
    pub fn factor(&self, key: &BlockKey, d: u32) -> Result<Option<Factor>> {
        match self.cardinality(key)? {
            None => Err(Error::RegistryIncomplete {
                w1: format_doubled(key.top()),
                bound: format_doubled(self.bound_doubled),
            }),
            Some(0) => Ok(None),
            Some(c) => {
                let rec = self.blocks.get(key);
                Ok(Some(Factor {
                    block: key.clone(),
                    d,
                    label: rec.and_then(|r| r.names.first().cloned()).unwrap_or_else(|| key.to_string()),
                    cardinality: c,
                    field_degree: rec.and_then(|r| r.field_degree),
                }))
            }
        }
    }

    /// Merge records from JSON. Disagreement with the built-in list, a
    /// nonzero cardinality forbidden by parity, or a repeated key is an error.
    pub fn ingest<R: Read>(&mut self, reader: R) -> Result<()> {
        let file: RegistryFile = serde_json::from_reader(reader)?;
        let (records, bound) = match file {
            RegistryFile::Records(r) => (r, None),
            RegistryFile::Extension { blocks, complete_up_to_doubled } => (blocks, complete_up_to_doubled),
        };
        let mut staged = self.blocks.clone();
        for r in records {
            let key = r.key();
            key.validate().map_err(|e| Error::Registry(e.to_string()))?;
            if r.cardinality > 0 && !key.parity_allows() {
                return Err(Error::Registry(format!(
                    "{key} has cardinality {} but is empty by the parity constraint",
                    r.cardinality
                )));
            }
            if key.top() <= self.builtin_bound {
                let known = self.blocks.get(&key).map_or(0, |b| b.cardinality);
                if known != r.cardinality {
                    return Err(Error::Registry(format!(
                        "{key} has cardinality {known} in the built-in list, record says {}",
                        r.cardinality
                    )));
                }
                continue;
            }
            if staged.contains_key(&key) {
                return Err(Error::Registry(format!("{key} is listed twice")));
            }
            staged.insert(key, r);
            self.ingested += 1;
        }
        self.blocks = staged;
        if let Some(b) = bound {
            self.bound_doubled = self.bound_doubled.max(b);
        }
        Ok(())
    }
}

impl Default for Registry {
    fn default() -> Registry {
        Registry::builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        let r = Registry::builtin();
        assert_eq!(r.records().count(), 11);
        let s = |w: &[u32]| BlockKey::new(BlockKind::Symplectic, w.to_vec());
        assert_eq!(r.cardinality(&s(&[11])).unwrap(), Some(1));
        assert_eq!(r.cardinality(&s(&[13])).unwrap(), Some(0));
        assert_eq!(r.cardinality(&s(&[23])).unwrap(), None);
        assert_eq!(r.cardinality(&s(&[21, 13])).unwrap(), Some(1));
        assert!(matches!(r.factor(&s(&[23]), 2), Err(Error::RegistryIncomplete { .. })));
        // empty by parity even beyond the bound
        let o = BlockKey::new(BlockKind::OddOrthogonal, vec![24]);
        assert_eq!(r.cardinality(&o).unwrap(), Some(0));
    }

    #[test]
    fn ingestion() {
        let mut r = Registry::builtin();
        r.ingest(r#"[{"kind":"symplectic","doubled_weights":[23],"cardinality":2}]"#.as_bytes()).unwrap();
        let s23 = BlockKey::new(BlockKind::Symplectic, vec![23]);
        assert_eq!(r.cardinality(&s23).unwrap(), Some(2));
        assert_eq!(r.factor(&s23, 2).unwrap().unwrap().label, "S(23/2)");

        let mut r = Registry::builtin();
        let e = r.ingest(r#"[{"kind":"symplectic","doubled_weights":[11],"cardinality":2}]"#.as_bytes());
        assert!(matches!(e, Err(Error::Registry(_))));

        let e = r.ingest(r#"[{"kind":"odd_orthogonal","doubled_weights":[24],"cardinality":1}]"#.as_bytes());
        assert!(matches!(e, Err(Error::Registry(_))));

        let mut r = Registry::builtin();
        r.ingest(r#"{"blocks":[],"complete_up_to_doubled":24}"#.as_bytes()).unwrap();
        assert_eq!(r.cardinality(&BlockKey::new(BlockKind::Symplectic, vec![23])).unwrap(), Some(0));
    }
}
