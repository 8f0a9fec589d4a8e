//! Published Betti numbers, Euler characteristics and class counts, and
//! stable Poincare series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A table cell: an exact value or a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableValue {
    Exact(i64),
    AtLeast { at_least: i64 },
}

impl TableValue {
    pub fn exact(&self) -> Option<i64> {
        match *self {
            TableValue::Exact(v) => Some(v),
            TableValue::AtLeast { .. } => None,
        }
    }

    /// Whether `x` is compatible with this cell.
    pub fn admits(&self, x: i64) -> bool {
        match *self {
            TableValue::Exact(v) => x == v,
            TableValue::AtLeast { at_least } => x >= at_least,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceTable {
    pub id: String,
    pub description: String,
    pub citation: String,
    /// What the index runs over: "degree" or "genus".
    pub index: String,
    pub indices: Vec<u32>,
    pub values: Vec<TableValue>,
}

impl ReferenceTable {
    /// Exact values, or `None` if the table contains bounds.
    pub fn exact_values(&self) -> Option<Vec<i64>> {
        self.values.iter().map(TableValue::exact).collect()
    }
}

pub const TABLE_IDS: [&str; 10] = [
    "tor2",
    "tor3",
    "vor4",
    "perf4_low",
    "sat4_constraints",
    "perf4_ih",
    "hain_a3",
    "hain_sat3",
    "euler_ag",
    "torsion_counts",
];

fn even_degrees(n: usize) -> Vec<u32> {
    (0..n as u32).map(|i| 2 * i).collect()
}

fn exact(v: &[i64]) -> Vec<TableValue> {
    v.iter().map(|&x| TableValue::Exact(x)).collect()
}

pub fn reference_table(id: &str) -> Result<ReferenceTable> {
    let t = |description: &str, citation: &str, index: &str, indices: Vec<u32>, values: Vec<TableValue>| {
        assert_eq!(indices.len(), values.len());
        ReferenceTable {
            id: id.to_string(),
            description: description.to_string(),
            citation: citation.to_string(),
            index: index.to_string(),
            indices,
            values,
        }
    };
    let table = match id {
        "tor2" => t(
            "even Betti numbers of the toroidal compactification of A_2; odd Betti numbers vanish",
            "cohomology equals the Chow ring via the cycle map; the space is the moduli of stable genus 2 curves",
            "degree",
            even_degrees(4),
            exact(&[1, 2, 2, 1]),
        ),
        "tor3" => t(
            "even Betti numbers of the toroidal compactification of A_3; odd Betti numbers vanish",
            "cohomology equals the Chow ring via the cycle map, computed from the toroidal stratification",
            "degree",
            even_degrees(7),
            exact(&[1, 2, 4, 6, 4, 2, 1]),
        ),
        "vor4" => t(
            "even Betti numbers of the second Voronoi compactification of A_4; odd Betti numbers vanish",
            "stratification argument completed by the Euler characteristic e(A_4) = 9",
            "degree",
            even_degrees(11),
            exact(&[1, 3, 5, 11, 17, 19, 17, 11, 5, 3, 1]),
        ),
        "perf4_low" => t(
            "Betti numbers of the perfect cone compactification of A_4 in degrees 0..8",
            "Tate classes of weight 2i in degree i throughout this range",
            "degree",
            (0..9).collect(),
            exact(&[1, 0, 2, 0, 4, 0, 8, 0, 14]),
        ),
        "sat4_constraints" => t(
            "even Betti numbers of the Satake compactification of A_4, exact or bounded below",
            "pure Tate type except in degrees 6 and 8; odd Betti numbers vanish in degree <= 7",
            "degree",
            even_degrees(11),
            [1, 1, 1, 3, 3]
                .iter()
                .map(|&x| TableValue::Exact(x))
                .chain([2, 2, 2, 1].iter().map(|&x| TableValue::AtLeast { at_least: x }))
                .chain([TableValue::Exact(1), TableValue::Exact(1)])
                .collect(),
        ),
        "perf4_ih" => t(
            "even intersection Betti numbers of the perfect cone compactification of A_4; odd ones vanish",
            "decomposition theorem applied to the resolution from the second Voronoi compactification",
            "degree",
            even_degrees(11),
            exact(&[1, 2, 4, 9, 14, 16, 14, 9, 4, 2, 1]),
        ),
        "hain_a3" => t(
            "even Betti numbers of A_3; odd Betti numbers vanish",
            "Q[lambda_1]/(lambda_1^4) outside degree 6; degree 6 is an extension of Q(-6) by Q(-3)",
            "degree",
            even_degrees(4),
            exact(&[1, 1, 1, 2]),
        ),
        "hain_sat3" => t(
            "even Betti numbers of the Satake compactification of A_3",
            "Q[lambda_1]/(lambda_1^7) outside degree 6; degree 6 is a 3-dimensional mixed Hodge structure",
            "degree",
            even_degrees(7),
            exact(&[1, 1, 1, 3, 1, 1, 1]),
        ),
        "euler_ag" => t(
            "Euler characteristic e(A_g)",
            "elliptic term of the trace formula evaluated with computed masses",
            "genus",
            (1..=9).collect(),
            exact(&[1, 2, 5, 9, 18, 46, 104, 200, 528]),
        ),
        "torsion_counts" => t(
            "number of torsion R-elliptic conjugacy classes of Sp_2g(Z) up to sign",
            "number of masses needed in each rank, using m_{-c} = m_c",
            "genus",
            (1..=7).collect(),
            exact(&[3, 12, 32, 92, 219, 530, 1158]),
        ),
        _ => return Err(Error::UnknownTable(id.to_string())),
    };
    Ok(table)
}

/// Spaces with a known stable cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "space", content = "n")]
pub enum StableSpace {
    /// A_g: free on lambda_1, lambda_3, lambda_5, ...
    Ag,
    /// Satake compactification: adds classes y_6, y_10, ...
    Sat,
    /// n-fold fibre product of the universal abelian variety over A_g.
    Universal(u32),
}

impl StableSpace {
    /// Degrees of the polynomial generators up to `max_degree`.
    pub fn generator_degrees(self, max_degree: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..).map(|i| 4 * i + 2).take_while(|&d| d <= max_degree).collect();
        match self {
            StableSpace::Ag => {}
            StableSpace::Sat => out.extend((1..).map(|i| 4 * i + 2).take_while(|&d| d <= max_degree)),
            StableSpace::Universal(n) => {
                let n = n as usize;
                if max_degree >= 2 {
                    out.extend(std::iter::repeat(2).take(n + n * n.saturating_sub(1) / 2));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Range of degrees where the series is the actual cohomology of the
    /// genus g space.
    pub fn validity(self) -> &'static str {
        "degree k < g"
    }
}

/// Graded dimensions of the polynomial algebra on the given even-degree
/// generators, in degrees 0..=max_degree.
fn polynomial_series(generators: &[usize], max_degree: usize) -> Result<Vec<u64>> {
    let mut c = vec![0u64; max_degree + 1];
    c[0] = 1;
    for &d in generators {
        for k in d..=max_degree {
            c[k] = c[k]
                .checked_add(c[k - d])
                .ok_or_else(|| Error::ResourceLimit(format!("coefficient in degree {k} overflows u64")))?;
        }
    }
    Ok(c)
}

pub fn stable_series(space: StableSpace, max_degree: usize) -> Result<Vec<u64>> {
    polynomial_series(&space.generator_degrees(max_degree), max_degree)
}

/// Stable intersection cohomology of the Satake compactification, which
/// agrees with the stable cohomology of A_g.
pub fn stable_ih_series(max_degree: usize) -> Result<Vec<u64>> {
    stable_series(StableSpace::Ag, max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_resolve() {
        for id in TABLE_IDS {
            let t = reference_table(id).unwrap();
            assert_eq!(t.indices.len(), t.values.len());
        }
        assert!(matches!(reference_table("nope"), Err(Error::UnknownTable(_))));
        let sat = reference_table("sat4_constraints").unwrap();
        assert!(sat.exact_values().is_none());
        assert!(sat.values[5].admits(2) && !sat.values[5].admits(1));
    }

    #[test]
    fn series() {
        assert_eq!(stable_series(StableSpace::Ag, 6).unwrap(), vec![1, 0, 1, 0, 1, 0, 2]);
        assert_eq!(stable_series(StableSpace::Sat, 6).unwrap()[6], 3);
        assert_eq!(stable_series(StableSpace::Universal(1), 2).unwrap()[2], 2);
        assert_eq!(stable_series(StableSpace::Universal(2), 2).unwrap()[2], 4);
        assert_eq!(stable_ih_series(10).unwrap(), stable_series(StableSpace::Ag, 10).unwrap());
        assert_eq!(stable_series(StableSpace::Ag, 0).unwrap(), vec![1]);
    }

    #[test]
    fn cell_serialization() {
        let v = serde_json::to_string(&reference_table("sat4_constraints").unwrap().values).unwrap();
        assert_eq!(v, r#"[1,1,1,3,3,{"at_least":2},{"at_least":2},{"at_least":2},{"at_least":1},1,1]"#);
    }
}
