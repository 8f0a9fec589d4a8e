//! Torsion conjugacy classes of Sp(2g, Z) up to the data seen by characters,
//! mass tables, and the elliptic term of the trace formula.
//!
//! A class is recorded by the characteristic polynomial of its elements, a
//! product of cyclotomic polynomials of total degree 2g in which Phi_1 and
//! Phi_2 occur to even powers. Its text form lists `d^m` factors by
//! increasing index, e.g. `1^2,3^1,4^2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{euler_phi, gcd, lcm, negate_cyclotomic_index, zeta_negative, Rational};
use crate::reps::{character_from_weights, weight_multiplicities, HighestWeight, WeightSystem};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TorsionClass {
    /// `(d, m_d)` with increasing d and m_d >= 1.
    parts: Vec<(u64, u32)>,
}

impl TorsionClass {
    pub fn new(parts: impl IntoIterator<Item = (u64, u32)>) -> Result<TorsionClass> {
        let mut map: BTreeMap<u64, u32> = BTreeMap::new();
        for (d, m) in parts {
            if d == 0 {
                return Err(invalid("0", "cyclotomic index must be positive"));
            }
            if m > 0 {
                *map.entry(d).or_default() += m;
            }
        }
        let c = TorsionClass { parts: map.into_iter().collect() };
        for d in [1, 2] {
            if c.multiplicity(d) % 2 == 1 {
                return Err(invalid(&c.to_string(), &format!("Phi_{d} must occur to an even power")));
            }
        }
        if c.parts.is_empty() {
            return Err(invalid("", "empty class"));
        }
        Ok(c)
    }

    /// Phi_1^{2g}: the identity.
    pub fn identity(g: usize) -> TorsionClass {
        TorsionClass { parts: vec![(1, 2 * g as u32)] }
    }

    /// Phi_2^{2g}: minus the identity.
    pub fn minus_identity(g: usize) -> TorsionClass {
        TorsionClass { parts: vec![(2, 2 * g as u32)] }
    }

    pub fn parts(&self) -> &[(u64, u32)] {
        &self.parts
    }

    pub fn multiplicity(&self, d: u64) -> u32 {
        self.parts.iter().find(|(e, _)| *e == d).map_or(0, |(_, m)| *m)
    }

    /// Degree of the characteristic polynomial.
    pub fn degree(&self) -> u64 {
        self.parts.iter().map(|&(d, m)| euler_phi(d) * m as u64).sum()
    }

    pub fn genus(&self) -> usize {
        (self.degree() / 2) as usize
    }

    /// The class of -c.
    pub fn negate(&self) -> TorsionClass {
        TorsionClass::new(self.parts.iter().map(|&(d, m)| (negate_cyclotomic_index(d), m)))
            .expect("negation preserves validity")
    }

    /// Orbit representative under negation: the smaller text encoding.
    pub fn negation_representative(&self) -> TorsionClass {
        let neg = self.negate();
        if neg.to_string() < self.to_string() {
            neg
        } else {
            self.clone()
        }
    }

    /// Order N of the class (lcm of the indices) and, for each of the g
    /// eigenvalue pairs, an exponent e with eigenvalues zeta_N^{+-e}.
    pub fn eigen_exponents(&self) -> (u64, Vec<u64>) {
        let n = self.parts.iter().fold(1, |acc, &(d, _)| lcm(acc, d));
        let mut exps = Vec::with_capacity(self.genus());
        for &(d, m) in &self.parts {
            match d {
                1 => exps.extend(std::iter::repeat(0).take(m as usize / 2)),
                2 => exps.extend(std::iter::repeat(n / 2).take(m as usize / 2)),
                _ => {
                    for k in (1..d).filter(|&k| 2 * k < d && gcd(k, d) == 1) {
                        exps.extend(std::iter::repeat(k * (n / d)).take(m as usize));
                    }
                }
            }
        }
        (n, exps)
    }
}

fn invalid(class: &str, reason: &str) -> Error {
    Error::InvalidClass { class: class.to_string(), reason: reason.to_string() }
}

impl fmt::Display for TorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(d, m)| format!("{d}^{m}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for TorsionClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<TorsionClass> {
        let mut parts = Vec::new();
        let mut last = 0;
        for item in s.split(',') {
            let (d, m) = item.split_once('^').ok_or_else(|| invalid(s, "expected `d^m`"))?;
            let d: u64 = d.parse().map_err(|_| invalid(s, "bad cyclotomic index"))?;
            let m: u32 = m.parse().map_err(|_| invalid(s, "bad multiplicity"))?;
            if d == 0 || m == 0 {
                return Err(invalid(s, "index and multiplicity must be positive"));
            }
            if d <= last {
                return Err(invalid(s, "indices must be strictly increasing"));
            }
            last = d;
            parts.push((d, m));
        }
        TorsionClass::new(parts)
    }
}

impl TryFrom<String> for TorsionClass {
    type Error = Error;
    fn try_from(s: String) -> Result<TorsionClass> {
        s.parse()
    }
}

impl From<TorsionClass> for String {
    fn from(c: TorsionClass) -> String {
        c.to_string()
    }
}

/// All torsion classes of Sp(2g, Z), or one per negation orbit.
pub fn enumerate_torsion_classes(g: usize, mod_negation: bool) -> Vec<TorsionClass> {
    assert!(g >= 1);
    let total = 2 * g as u64;
    // phi(d) >= sqrt(d/2), so phi(d) <= 2g forces d <= 2 (2g)^2
    let indices: Vec<(u64, u64)> =
        (1..=2 * total * total).map(|d| (d, euler_phi(d))).filter(|&(_, p)| p <= total).collect();

    fn rec(
        i: usize,
        remaining: u64,
        indices: &[(u64, u64)],
        cur: &mut Vec<(u64, u32)>,
        out: &mut Vec<TorsionClass>,
    ) {
        if remaining == 0 {
            out.push(TorsionClass { parts: cur.clone() });
            return;
        }
        if i == indices.len() {
            return;
        }
        let (d, p) = indices[i];
        let step = if d <= 2 { 2 } else { 1 };
        let mut m = 0u32;
        while m as u64 * p <= remaining {
            if m > 0 {
                cur.push((d, m));
            }
            rec(i + 1, remaining - m as u64 * p, indices, cur, out);
            if m > 0 {
                cur.pop();
            }
            m += step;
        }
    }
    let mut out = Vec::new();
    rec(0, total, &indices, &mut Vec::new(), &mut out);
    if mod_negation {
        out.retain(|c| c.negation_representative() == *c);
    }
    out.sort_by_key(|c| c.to_string());
    out
}

/// zeta(-1) zeta(-3) ... zeta(1 - 2g), the mass of +-identity.
pub fn central_mass(g: usize) -> Rational {
    (1..=g).map(zeta_negative).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// Missing classes are an error.
    Strict,
    /// Missing classes get mass zero and a warning.
    Lenient,
}

/// Masses m_c for every torsion class of Sp(2g, Z).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassTable {
    pub genus: usize,
    pub masses: BTreeMap<TorsionClass, Rational>,
    pub provenance: String,
    pub warnings: Vec<String>,
}

impl MassTable {
    /// Build a complete table from masses given on some classes. Each
    /// negation orbit may be given at most once; the +-identity default to
    /// [`central_mass`].
    pub fn from_orbits(
        g: usize,
        given: impl IntoIterator<Item = (TorsionClass, Rational)>,
        completeness: Completeness,
        provenance: impl Into<String>,
    ) -> Result<MassTable> {
        let mut masses = BTreeMap::new();
        for (c, m) in given {
            insert_orbit(g, &mut masses, c, m).map_err(|reason| Error::MassTable { line: 0, reason })?;
        }
        MassTable::complete(g, masses, completeness, provenance.into())
    }

    fn complete(
        g: usize,
        mut masses: BTreeMap<TorsionClass, Rational>,
        completeness: Completeness,
        provenance: String,
    ) -> Result<MassTable> {
        let id = TorsionClass::identity(g);
        if !masses.contains_key(&id) {
            masses.insert(TorsionClass::minus_identity(g), central_mass(g));
            masses.insert(id, central_mass(g));
        }
        let mut warnings = Vec::new();
        let missing: Vec<TorsionClass> = enumerate_torsion_classes(g, false)
            .into_iter()
            .filter(|c| !masses.contains_key(c))
            .collect();
        if !missing.is_empty() {
            match completeness {
                Completeness::Strict => {
                    let mut reps: BTreeSet<String> = BTreeSet::new();
                    for c in &missing {
                        reps.insert(c.negation_representative().to_string());
                    }
                    return Err(Error::MissingClasses(reps.into_iter().collect()));
                }
                Completeness::Lenient => {
                    warnings.push(format!(
                        "{} torsion classes missing from the mass table were given mass 0",
                        missing.len()
                    ));
                    for c in missing {
                        masses.insert(c, Rational::zero());
                    }
                }
            }
        }
        Ok(MassTable { genus: g, masses, provenance, warnings })
    }

    pub fn mass(&self, c: &TorsionClass) -> Rational {
        self.masses.get(c).cloned().unwrap_or_else(Rational::zero)
    }
}

fn insert_orbit(
    g: usize,
    masses: &mut BTreeMap<TorsionClass, Rational>,
    c: TorsionClass,
    m: Rational,
) -> std::result::Result<(), String> {
    if c.degree() != 2 * g as u64 {
        return Err(format!("class {c} has degree {}, expected {}", c.degree(), 2 * g));
    }
    let neg = c.negate();
    if masses.contains_key(&c) || masses.contains_key(&neg) {
        return Err(format!("class {c} (or its negative) is listed twice"));
    }
    masses.insert(neg, m.clone());
    masses.insert(c, m);
    Ok(())
}

/// Parse a mass table: a `genus: g` header, `#` comments, and records
/// `d1^m1,d2^m2,...<TAB>p/q`, one per negation orbit.
pub fn parse_mass_table<R: BufRead>(
    reader: R,
    g: usize,
    completeness: Completeness,
    provenance: impl Into<String>,
) -> Result<MassTable> {
    let mut header: Option<usize> = None;
    let mut masses = BTreeMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let err = |reason: String| Error::MassTable { line: lineno, reason };
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        if let Some(v) = text.strip_prefix("genus:") {
            if header.is_some() {
                return Err(err("repeated genus header".into()));
            }
            let h: usize = v.trim().parse().map_err(|_| err(format!("bad genus `{}`", v.trim())))?;
            if h != g {
                return Err(err(format!("file is for genus {h}, expected {g}")));
            }
            header = Some(h);
            continue;
        }
        if header.is_none() {
            return Err(err("record before the `genus:` header".into()));
        }
        let fields: Vec<&str> = text.split('\t').map(str::trim).filter(|f| !f.is_empty()).collect();
        let [class, mass] = fields[..] else {
            return Err(err(format!("expected `class<TAB>mass`, got `{text}`")));
        };
        let c: TorsionClass = class.parse().map_err(|e: Error| err(e.to_string()))?;
        let m: Rational = mass.parse().map_err(|e| err(format!("{e}")))?;
        insert_orbit(g, &mut masses, c, m).map_err(err)?;
    }
    if header.is_none() {
        return Err(Error::MassTable { line: 0, reason: "missing `genus:` header".into() });
    }
    MassTable::complete(g, masses, completeness, provenance.into())
}

/// sum_c m_c tr(c | V_lambda) over all torsion classes c.
pub fn elliptic_term(hw: &HighestWeight, masses: &MassTable) -> Result<Rational> {
    if masses.genus != hw.genus() {
        return Err(Error::GenusMismatch { left: hw.genus(), right: masses.genus });
    }
    elliptic_term_from_weights(&weight_multiplicities(hw)?, masses)
}

/// [`elliptic_term`] for an already computed weight system.
pub fn elliptic_term_from_weights(ws: &WeightSystem, masses: &MassTable) -> Result<Rational> {
    if masses.genus != ws.genus {
        return Err(Error::GenusMismatch { left: ws.genus, right: masses.genus });
    }
    let mut total = Rational::zero();
    for (c, m) in &masses.masses {
        if m.is_zero() {
            continue;
        }
        total += m * Rational::from(character_from_weights(ws, c)?);
    }
    Ok(total)
}
