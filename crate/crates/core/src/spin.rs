//! Spin and half-spin branching of Arthur parameters, and the resulting
//! intersection cohomology of the Satake compactification with coefficients
//! in V_lambda.
//!
//! Characters are Laurent polynomials in `T` (the SL2 torus, Lefschetz
//! grading) and `S` (the circle action, q - p). Spin weights are half-sums
//! of standard weights, so characters are built with doubled exponents and
//! halved once at the end.

use std::collections::BTreeMap;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::arthur::{enumerate_parameters, weight_block, ArthurParameter, BlockKind, Factor, Registry};
use crate::error::{Error, Result};
use crate::exact::{LaurentPoly, Rational};
use crate::reps::HighestWeight;

/// A +- pair of weights of Std tensor nu_d, with `s` the doubled exponent
/// of z/|z| and `t` the nu_d exponent, so the pair is `(s, t), (-s, -t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightLine {
    pub s: i64,
    pub t: i64,
}

impl WeightLine {
    /// Eigenvalue of tau_psi on the weight `(s, t)`.
    pub fn tau(&self) -> i64 {
        (self.s + self.t) / 2
    }
}

/// Lines of Std tensor nu_d for a block of the given kind. The flag is set
/// when the standard piece also has a zero weight (odd dimension).
pub fn standard_weight_lines(
    kind: BlockKind,
    doubled_weights: &[u32],
    d: u32,
    principal: bool,
) -> Result<(Vec<WeightLine>, bool)> {
    // rejects incompatible kind/d and non-integral runs
    weight_block(kind, doubled_weights, d, principal)?;
    let d = d as i64;
    let mut lines = Vec::new();
    for &w in doubled_weights {
        for j in 0..d {
            lines.push(WeightLine { s: w as i64, t: d - 1 - 2 * j });
        }
    }
    if principal {
        for e in (2..d).step_by(2) {
            lines.push(WeightLine { s: 0, t: e });
        }
    }
    Ok((lines, principal))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinPart {
    Full,
    Half(Sign),
}

/// Character of a (half-)spin representation restricted along the
/// parameter, with doubled exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoVarCharacter {
    doubled: LaurentPoly,
}

impl TwoVarCharacter {
    pub fn from_doubled(doubled: LaurentPoly) -> TwoVarCharacter {
        TwoVarCharacter { doubled: doubled.with_s() }
    }

    pub fn doubled(&self) -> &LaurentPoly {
        &self.doubled
    }

    /// The character in actual exponents; errors if some exponent is
    /// half-integral.
    pub fn poly(&self) -> Result<LaurentPoly> {
        self.doubled
            .halve_exponents()
            .ok_or_else(|| Error::Spin(format!("half-integral exponent in {}", self.doubled)))
    }

    /// Restriction to SL2 (S = 1), a polynomial in T.
    pub fn t_character(&self) -> Result<LaurentPoly> {
        Ok(self.poly()?.at_s_one())
    }

    pub fn dimension(&self) -> Rational {
        self.doubled.eval_at_one()
    }

    /// True when the circle acts trivially.
    pub fn is_s_trivial(&self) -> bool {
        self.doubled.terms().all(|(e, _)| e[1] == 0)
    }

    pub fn mul(&self, other: &TwoVarCharacter) -> TwoVarCharacter {
        TwoVarCharacter { doubled: &self.doubled * &other.doubled }
    }
}

/// Even and odd flip-parity parts of prod (x_l + x_l^{-1}), x_l = S^s T^t.
fn flip_parts(lines: &[WeightLine]) -> (LaurentPoly, LaurentPoly) {
    let mut even = LaurentPoly::one(2);
    let mut odd = LaurentPoly::zero(2);
    for l in lines {
        let x = LaurentPoly::monomial(2, [l.t, l.s], Rational::one());
        let xi = LaurentPoly::monomial(2, [-l.t, -l.s], Rational::one());
        let e2 = &(&even * &x) + &(&odd * &xi);
        let o2 = &(&odd * &x) + &(&even * &xi);
        even = e2;
        odd = o2;
    }
    (even, odd)
}

/// Largest tau_psi eigenvalue (doubled twice) on a character with doubled
/// exponents: a weight (s, t) pairs with tau as (s + t) / 2.
fn max_tau(p: &LaurentPoly) -> Option<i64> {
    p.terms().map(|(e, _)| e[0] + e[1]).max()
}

/// Spin character of the standard piece of one factor: the full spin
/// representation for the principal factor, a half-spin otherwise. The
/// plus half is the one on which tau_psi has the larger top eigenvalue.
pub fn spin_character(
    kind: BlockKind,
    doubled_weights: &[u32],
    d: u32,
    principal: bool,
    part: SpinPart,
) -> Result<TwoVarCharacter> {
    let (lines, has_zero) = standard_weight_lines(kind, doubled_weights, d, principal)?;
    let (even, odd) = flip_parts(&lines);
    match (part, has_zero) {
        (SpinPart::Full, true) => Ok(TwoVarCharacter::from_doubled(&even + &odd)),
        (SpinPart::Full, false) => {
            Err(Error::Spin("the full spin representation is only used for the principal factor".into()))
        }
        (SpinPart::Half(_), true) => {
            Err(Error::Spin("an odd orthogonal group has no half-spin representations".into()))
        }
        (SpinPart::Half(sign), false) => {
            let (me, mo) = (max_tau(&even), max_tau(&odd));
            if me == mo {
                return Err(Error::Spin("tau_psi does not separate the half-spin representations".into()));
            }
            let (plus, minus) = if me > mo { (even, odd) } else { (odd, even) };
            Ok(TwoVarCharacter::from_doubled(if sign == Sign::Plus { plus } else { minus }))
        }
    }
}

/// Spin character of one factor of a parameter.
pub fn factor_character(f: &Factor, principal: bool, part: SpinPart) -> Result<TwoVarCharacter> {
    spin_character(f.block.kind, &f.block.doubled_weights, f.d, principal, part)
}

/// The S = 1 characters given in closed form: one polynomial for an odd
/// orthogonal factor, the two half-spin characters otherwise (unordered).
pub fn closed_form_oracle(kind: BlockKind, weight_count: usize, d: u32) -> Result<Vec<LaurentPoly>> {
    let m = weight_count as u32;
    let pow2 = |k: u32| Rational::from_integer(num::BigInt::from(2).pow(k));
    match kind {
        BlockKind::OddOrthogonal => {
            if d % 2 == 0 {
                return Err(Error::Spin(format!("odd orthogonal factor with even d = {d}")));
            }
            let mut p = LaurentPoly::constant(1, pow2(m));
            for j in 1..=(d as i64 - 1) / 2 {
                p = &p * &LaurentPoly::t_pair(j).pow(2 * m + 1);
            }
            Ok(vec![p])
        }
        BlockKind::EvenOrthogonal => {
            if d % 2 == 0 || m == 0 || m % 2 == 1 {
                return Err(Error::Spin(format!("even orthogonal factor with {m} weights and d = {d}")));
            }
            let mut p = LaurentPoly::constant(1, pow2(m - 1));
            for j in 1..=(d as i64 - 1) / 2 {
                p = &p * &LaurentPoly::t_pair(j).pow(2 * m);
            }
            Ok(vec![p.clone(), p])
        }
        BlockKind::Symplectic => {
            if d % 2 == 1 || m == 0 {
                return Err(Error::Spin(format!("symplectic factor with {m} weights and d = {d}")));
            }
            let two = LaurentPoly::constant(1, Rational::from(2));
            let mut a = LaurentPoly::one(1);
            let mut b = LaurentPoly::one(1);
            for j in 1..=(d as i64) / 2 {
                let pair = LaurentPoly::t_pair(2 * j - 1);
                a = &a * &(&two + &pair).pow(m);
                b = &b * &(&two - &pair).pow(m);
            }
            let half = Rational::new(1, 2);
            Ok(vec![(&a + &b).scale(&half), (&a - &b).scale(&half)])
        }
    }
}

/// rho_psi for the given half-spin choices, one per non-principal factor
/// in canonical order.
pub fn rho_psi(psi: &ArthurParameter, signs: &[Sign]) -> Result<TwoVarCharacter> {
    if signs.len() != psi.r() {
        return Err(Error::Validation(format!(
            "{} has {} non-principal factor(s) but {} sign(s) were given",
            psi.shape(),
            psi.r(),
            signs.len()
        )));
    }
    let mut acc = factor_character(&psi.principal, true, SpinPart::Full)?;
    for (f, &u) in psi.others.iter().zip(signs) {
        acc = acc.mul(&factor_character(f, false, SpinPart::Half(u))?);
    }
    Ok(acc)
}

/// Character of nu_d.
pub fn nu(d: u32) -> LaurentPoly {
    let top = d as i64 - 1;
    LaurentPoly::from_t_terms((0..d as i64).map(|j| (top - 2 * j, 1)))
}

/// Decompose an SL2 character into irreducibles nu_d, largest first.
pub fn nu_decompose(p: &LaurentPoly) -> Result<Vec<u32>> {
    if p.terms().any(|(e, _)| e[1] != 0) {
        return Err(Error::NotSl2Character(format!("{p} depends on S")));
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    while let Some(top) = rest.max_t_exponent() {
        let c = rest.coeff_t(top);
        let n = c.to_i64().filter(|&n| n > 0 && top >= 0);
        let Some(n) = n else {
            return Err(Error::NotSl2Character(format!("{p}: coefficient {c} at T^{top}")));
        };
        let d = (top + 1) as u32;
        rest = &rest - &nu(d).scale(&c);
        out.extend(std::iter::repeat(d).take(n as usize));
    }
    let back = out.iter().fold(LaurentPoly::zero(1), |acc, &d| &acc + &nu(d));
    if &back != p {
        return Err(Error::NotSl2Character(format!("{p} does not re-expand")));
    }
    Ok(out)
}

/// Degree g(g+1)/2 - d + 1 of the primitive class of each nu_d.
pub fn primitive_degrees(g: usize, nus: &[u32]) -> Vec<i64> {
    let n = (g * (g + 1) / 2) as i64;
    nus.iter().map(|&d| n - d as i64 + 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeEntry {
    pub p: i64,
    pub q: i64,
    pub dim: u64,
}

/// Hodge numbers of H_psi: S^a T^b sits in bidegree (p, q) with q - p = a
/// and p + q = b + g(g+1)/2 + w(lambda), the last term being the weight of
/// the local system.
pub fn hodge_diamond(psi: &ArthurParameter, signs: &[Sign]) -> Result<Vec<HodgeEntry>> {
    let chi = rho_psi(psi, signs)?.poly()?;
    diamond_of(&chi, psi.genus(), local_system_weight(psi)?)
}

/// w(lambda) recovered from tau = lambda + rho.
fn local_system_weight(psi: &ArthurParameter) -> Result<i64> {
    let g = psi.genus() as i64;
    Ok(psi.weight_set()?.iter().sum::<i64>() - g * (g + 1) / 2)
}

fn diamond_of(chi: &LaurentPoly, g: usize, w: i64) -> Result<Vec<HodgeEntry>> {
    let n = (g * (g + 1) / 2) as i64 + w;
    let mut out: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for (e, c) in chi.terms() {
        let (b, a) = (e[0], e[1]);
        let total = b + n;
        if (total - a) % 2 != 0 || total < a.abs() {
            return Err(Error::Hodge(format!("S^{a} T^{b} has no bidegree in weight {total}")));
        }
        let dim = c
            .to_i64()
            .filter(|&x| x > 0)
            .ok_or_else(|| Error::Hodge(format!("coefficient {c} of S^{a} T^{b}")))?;
        *out.entry(((total - a) / 2, (total + a) / 2)).or_default() += dim as u64;
    }
    Ok(out.into_iter().map(|((p, q), dim)| HodgeEntry { p, q, dim }).collect())
}

/// Half-spin choices per parameter shape. The bundled table holds only the
/// two assignments worked out in the literature for lambda = 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignTable {
    map: BTreeMap<String, Vec<Sign>>,
}

impl SignTable {
    pub fn bundled() -> SignTable {
        let mut map = BTreeMap::new();
        map.insert("D11[2]+[9]".to_string(), vec![Sign::Minus]);
        map.insert("D11[4]+[7]".to_string(), vec![Sign::Plus]);
        SignTable { map }
    }

    /// Parse a JSON object mapping shape strings to sign arrays.
    pub fn from_reader<R: Read>(reader: R) -> Result<SignTable> {
        Ok(serde_json::from_reader(reader)?)
    }

    pub fn get(&self, shape: &str) -> Option<&[Sign]> {
        self.map.get(shape).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Entries of `other` win over entries of `self`.
    pub fn merged(mut self, other: SignTable) -> SignTable {
        self.map.extend(other.map);
        self
    }
}

#[derive(Debug, Clone)]
pub enum SignPolicy {
    /// Only the bundled assignments.
    Bundled,
    /// A user table on top of the bundled one.
    Table(SignTable),
    /// Report every choice of signs.
    EmitBoth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignSource {
    /// No non-principal factor.
    None,
    Bundled,
    File,
    /// All choices give the same answer.
    Irrelevant,
    /// One of several choices listed under emit-both.
    Variant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeContribution {
    pub shape: String,
    pub multiplicity: u64,
    pub r: usize,
    pub signs: Vec<Sign>,
    pub sign_source: SignSource,
    pub nu: Vec<u32>,
    pub primitive_degrees: Vec<i64>,
    pub dimension: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge: Option<Vec<HodgeEntry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IhReport {
    pub genus: usize,
    pub lambda: Vec<i64>,
    /// dim IH^k for k = 0..g(g+1); `None` when emit-both variants disagree.
    pub betti: Option<Vec<u64>>,
    pub per_shape: Vec<ShapeContribution>,
    pub warnings: Vec<String>,
}

fn all_sign_vectors(r: usize) -> Vec<Vec<Sign>> {
    (0..1u32 << r)
        .map(|bits| (0..r).map(|i| if bits >> i & 1 == 0 { Sign::Plus } else { Sign::Minus }).collect())
        .collect()
}

/// Graded dimensions of a T-character, shifted to degrees 0..g(g+1).
fn betti_of(t_char: &LaurentPoly, g: usize) -> Result<Vec<u64>> {
    let n = (g * (g + 1) / 2) as i64;
    let mut out = vec![0u64; 2 * n as usize + 1];
    for (e, c) in t_char.terms() {
        let k = e[0] + n;
        let dim = c.to_i64().filter(|&x| x >= 0);
        match (dim, usize::try_from(k).ok().filter(|&k| k < out.len())) {
            (Some(x), Some(k)) => out[k] += x as u64,
            _ => return Err(Error::Spin(format!("term {c} T^{} outside degrees 0..{}", e[0], 2 * n))),
        }
    }
    Ok(out)
}

fn halves_differ(f: &Factor, with_s: bool) -> bool {
    let half = |u| {
        factor_character(f, false, SpinPart::Half(u))
            .and_then(|c| if with_s { c.poly() } else { c.t_character() })
            .ok()
    };
    half(Sign::Plus) != half(Sign::Minus)
}

struct Evaluated {
    signs: Vec<Sign>,
    t_char: LaurentPoly,
    poly: LaurentPoly,
}

fn evaluate(psi: &ArthurParameter, signs: Vec<Sign>) -> Result<Evaluated> {
    let poly = rho_psi(psi, &signs)?.poly()?;
    Ok(Evaluated { signs, t_char: poly.at_s_one(), poly })
}

fn contribution(psi: &ArthurParameter, ev: &Evaluated, source: SignSource, hodge: bool) -> Result<ShapeContribution> {
    let g = psi.genus();
    let nu = nu_decompose(&ev.t_char)?;
    Ok(ShapeContribution {
        shape: psi.shape(),
        multiplicity: psi.multiplicity(),
        r: psi.r(),
        signs: ev.signs.clone(),
        sign_source: source,
        primitive_degrees: primitive_degrees(g, &nu),
        nu,
        dimension: ev.t_char.eval_at_one().to_i64().unwrap_or(0) as u64,
        hodge: if hodge { Some(diamond_of(&ev.poly, g, local_system_weight(psi)?)?) } else { None },
    })
}

/// IH of the Satake compactification with coefficients in V_lambda,
/// assembled over the enumerated parameters.
pub fn ih_betti(hw: &HighestWeight, registry: &Registry, policy: &SignPolicy, hodge: bool) -> Result<IhReport> {
    let g = hw.genus();
    let len = g * (g + 1) + 1;
    let mut report =
        IhReport { genus: g, lambda: hw.lambda().to_vec(), betti: None, per_shape: Vec::new(), warnings: Vec::new() };
    if hw.weight() % 2 != 0 {
        report.betti = Some(vec![0; len]);
        report.warnings.push(format!("odd weight: w(lambda) = {}, the cohomology vanishes", hw.weight()));
        return Ok(report);
    }
    let table = match policy {
        SignPolicy::Bundled | SignPolicy::EmitBoth => SignTable::bundled(),
        SignPolicy::Table(t) => SignTable::bundled().merged(t.clone()),
    };
    let mut betti = vec![0u64; len];
    let mut ambiguous = false;
    for psi in enumerate_parameters(hw, registry)? {
        let shape = psi.shape();
        let mult = psi.multiplicity();
        let chosen: Vec<(Evaluated, SignSource)> = if psi.r() == 0 {
            vec![(evaluate(&psi, Vec::new())?, SignSource::None)]
        } else if matches!(policy, SignPolicy::EmitBoth) {
            all_sign_vectors(psi.r())
                .into_iter()
                .map(|s| evaluate(&psi, s).map(|e| (e, SignSource::Variant)))
                .collect::<Result<_>>()?
        } else if let Some(s) = table.get(&shape) {
            let source = match policy {
                SignPolicy::Table(t) if t.get(&shape).is_some() => SignSource::File,
                _ => SignSource::Bundled,
            };
            vec![(evaluate(&psi, s.to_vec())?, source)]
        } else {
            let all: Vec<Evaluated> =
                all_sign_vectors(psi.r()).into_iter().map(|s| evaluate(&psi, s)).collect::<Result<_>>()?;
            let same = |e: &Evaluated| if hodge { e.poly == all[0].poly } else { e.t_char == all[0].t_char };
            if !all.iter().all(same) {
                let factor = psi
                    .others
                    .iter()
                    .find(|f| halves_differ(f, hodge))
                    .map_or_else(String::new, Factor::shape);
                return Err(Error::MissingSign { shape, factor });
            }
            let first = all.into_iter().next().expect("at least one sign vector");
            vec![(first, SignSource::Irrelevant)]
        };

        let t0 = &chosen[0].0.t_char;
        if chosen.iter().any(|(e, _)| &e.t_char != t0) {
            ambiguous = true;
        }
        for (k, b) in betti_of(t0, g)?.into_iter().enumerate() {
            betti[k] += mult * b;
        }
        for (ev, source) in &chosen {
            report.per_shape.push(contribution(&psi, ev, *source, hodge)?);
        }
    }
    if ambiguous {
        report.warnings.push("sign choices change the Betti numbers; betti omitted, see per_shape variants".into());
    } else {
        report.betti = Some(betti);
    }
    Ok(report)
}
