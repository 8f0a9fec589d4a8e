use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use agcoh::arthur::{enumerate_parameters, Registry};
use agcoh::proportionality::{
    compact_dual_degree, lambda1_power, lambda_intersection, modular_form_asymptotics, proportionality_constant,
    siegel_volume, top_exponent_vectors,
};
use agcoh::reps::{weight_multiplicities, HighestWeight, WeightCache};
use agcoh::spin::{ih_betti, SignPolicy, SignTable};
use agcoh::tables::{reference_table, stable_series, StableSpace, TableValue, TABLE_IDS};
use agcoh::taut::{
    graded_dimensions, pairing_is_perfect, poincare_polynomial, quotient_by_top, square_rule, top_degree, MAX_GENUS,
};
use agcoh::torsion::{elliptic_term_from_weights, enumerate_torsion_classes, parse_mass_table, Completeness};
use agcoh::{Error, Result};
use serde_json::json;

use crate::output::{Outcome, Table};

pub const DATA_DIR_ENV: &str = "AGCOH_DATA_DIR";

/// Largest genus for which `intersect` lists every top monomial.
const INTERSECT_MAX_GENUS: usize = 8;
/// Largest genus for which the Gorenstein pairing is checked on request.
const PAIRING_MAX_GENUS: usize = 8;

fn check_genus(g: usize, max: usize) -> Result<()> {
    if g == 0 || g > max {
        return Err(Error::Validation(format!("--g must be in 1..={max}, got {g}")));
    }
    Ok(())
}

/// Highest weight from `--lambda`, defaulting to the trivial weight.
pub fn highest_weight(g: usize, lambda: Option<&[i64]>) -> Result<HighestWeight> {
    match lambda {
        None => Ok(HighestWeight::zero(g)),
        Some(l) if l.len() != g => Err(Error::Validation(format!(
            "--lambda has {} entries, expected g = {g}",
            l.len()
        ))),
        Some(l) => HighestWeight::new(l.to_vec()),
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

pub fn load_registry(path: Option<&Path>) -> Result<Registry> {
    let mut reg = Registry::builtin();
    if let Some(p) = path {
        reg.ingest(open(p)?)?;
    }
    Ok(reg)
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(T::to_string).collect()
}

fn rule_text(g: usize, k: usize) -> String {
    let terms: Vec<String> = square_rule(g, k)
        .iter()
        .map(|&(j, hi, c)| {
            let mono = if j == 0 { format!("u_{hi}") } else { format!("u_{j} u_{hi}") };
            format!("{c} {mono}")
        })
        .collect();
    let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ").replace("+ -", "- ") };
    format!("u_{k}^2 = {rhs}")
}

pub fn taut(g: usize, pairing: bool) -> Result<Outcome> {
    check_genus(g, MAX_GENUS)?;
    let dims = graded_dimensions(g);
    let mut warnings = Vec::new();
    let perfect = if pairing && g <= PAIRING_MAX_GENUS {
        Some(pairing_is_perfect(g))
    } else {
        if pairing {
            warnings.push(format!("pairing check skipped above g = {PAIRING_MAX_GENUS}"));
        }
        None
    };
    let quotient = (pairing && (2..=PAIRING_MAX_GENUS).contains(&g)).then(|| quotient_by_top(g).is_isomorphism());
    let mut table = Table::new(&["degree", "dimension"]);
    for (k, d) in dims.iter().enumerate() {
        table.push(vec![(2 * k).to_string(), d.to_string()]);
    }
    Ok(Outcome {
        inputs: json!({ "g": g, "pairing": pairing }),
        citations: vec![
            "R_g: Q[u_1, ..., u_g] modulo (1 + u_1 + ... + u_g)(1 - u_1 + ... + (-1)^g u_g) = 1, the cohomology ring of the Lagrangian Grassmannian",
            "R_g is Gorenstein with socle u_1 u_2 ... u_g in degree g(g+1)",
        ],
        result: json!({
            "genus": g,
            "dimension": 1u64 << g,
            "top_degree": 2 * top_degree(g),
            "even_degree_dimensions": dims,
            "poincare_polynomial": poincare_polynomial(g).to_string(),
            "square_rules": (1..=g).map(|k| rule_text(g, k)).collect::<Vec<_>>(),
            "pairing_perfect": perfect,
            "quotient_by_top_is_previous_genus": quotient,
        }),
        warnings,
        table,
    })
}

fn monomial_text(n: &[u32]) -> String {
    let parts: Vec<String> = n
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("lambda_{}", i + 1) } else { format!("lambda_{}^{e}", i + 1) })
        .collect();
    parts.join(" ")
}

pub fn intersect(g: usize) -> Result<Outcome> {
    check_genus(g, INTERSECT_MAX_GENUS)?;
    let mut rows = Vec::new();
    let mut table = Table::new(&["monomial", "compact_dual", "lambda"]);
    for n in top_exponent_vectors(g) {
        let dual = compact_dual_degree(g, &n)?;
        let lam = lambda_intersection(g, &n)?;
        table.push(vec![monomial_text(&n), dual.to_string(), lam.to_string()]);
        rows.push(json!({ "exponents": n, "monomial": monomial_text(&n), "compact_dual": dual, "lambda": lam }));
    }
    Ok(Outcome {
        inputs: json!({ "g": g }),
        citations: vec![
            "Hirzebruch-Mumford proportionality between a toroidal compactification of A_g and its compact dual",
            "lambda classes on A_g satisfy exactly the relations of R_(g-1)",
        ],
        result: json!({
            "genus": g,
            "proportionality_constant": proportionality_constant(g),
            "lambda1_power": lambda1_power(g),
            "monomials": rows,
        }),
        warnings: Vec::new(),
        table,
    })
}

pub fn modforms(g: usize) -> Result<Outcome> {
    check_genus(g, 64)?;
    let (c, e) = modular_form_asymptotics(g);
    let vol = siegel_volume(g);
    let mut table = Table::new(&["quantity", "value"]);
    table.push(vec!["dim M_k leading coefficient".into(), c.to_string()]);
    table.push(vec!["dim M_k exponent".into(), e.to_string()]);
    table.push(vec!["Siegel volume".into(), vol.to_string()]);
    Ok(Outcome {
        inputs: json!({ "g": g }),
        citations: vec![
            "dimension of Siegel modular forms of weight k grows like c k^(g(g+1)/2), c from the top power of lambda_1",
            "Siegel's volume of Sp(2g, Z) \\ H_g",
        ],
        result: json!({
            "genus": g,
            "dimension_asymptotics": { "coefficient": c, "exponent": e },
            "siegel_volume": { "rational": vol.rational, "pi_exponent": vol.pi_exponent, "text": vol.to_string() },
            "proportionality_constant": proportionality_constant(g),
        }),
        warnings: Vec::new(),
        table,
    })
}

pub fn torsion(g: usize, mod_negation: bool) -> Result<Outcome> {
    check_genus(g, 9)?;
    let classes = enumerate_torsion_classes(g, mod_negation);
    let names = strings(&classes);
    let mut table = Table::new(&["class"]);
    for n in &names {
        table.push(vec![n.clone()]);
    }
    Ok(Outcome {
        inputs: json!({ "g": g, "mod_negation": mod_negation }),
        citations: vec![
            "torsion classes of Sp(2g, Z) recorded by characteristic polynomials, products of cyclotomic polynomials",
        ],
        result: json!({ "genus": g, "mod_negation": mod_negation, "count": classes.len(), "classes": names }),
        warnings: Vec::new(),
        table,
    })
}

fn masses_path(g: usize, flag: Option<&Path>) -> Result<PathBuf> {
    if let Some(p) = flag {
        return Ok(p.to_path_buf());
    }
    match std::env::var_os(DATA_DIR_ENV).filter(|v| !v.is_empty()) {
        Some(dir) => Ok(PathBuf::from(dir).join(format!("masses_g{g}.tsv"))),
        None => Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("no mass table: pass --masses or set {DATA_DIR_ENV}"),
        ))),
    }
}

pub fn euler(
    g: usize,
    lambda: Option<&[i64]>,
    masses: Option<&Path>,
    lenient: bool,
    cache_dir: Option<&Path>,
) -> Result<Outcome> {
    check_genus(g, 64)?;
    let hw = highest_weight(g, lambda)?;
    let path = masses_path(g, masses)?;
    let completeness = if lenient { Completeness::Lenient } else { Completeness::Strict };
    let table_m = parse_mass_table(open(&path)?, g, completeness, path.display().to_string())?;
    let cache = cache_dir.map(WeightCache::new).or_else(WeightCache::from_env);
    let ws = match &cache {
        Some(c) => c.load_or_compute(&hw)?,
        None => weight_multiplicities(&hw)?,
    };
    let e = elliptic_term_from_weights(&ws, &table_m)?;
    let mut table = Table::new(&["g", "lambda", "elliptic_term"]);
    table.push(vec![g.to_string(), strings(hw.lambda()).join(","), e.to_string()]);
    Ok(Outcome {
        inputs: json!({
            "g": g,
            "lambda": hw.lambda(),
            "masses": table_m.provenance,
            "completeness": if lenient { "lenient" } else { "strict" },
        }),
        citations: vec![
            "elliptic part of the trace formula: sum over torsion classes of mass times character",
            "for the trivial local system the elliptic term is the Euler characteristic of A_g",
        ],
        result: json!({ "genus": g, "lambda": hw.lambda(), "weight": hw.weight(), "elliptic_term": e }),
        warnings: table_m.warnings.clone(),
        table,
    })
}

pub fn arthur(g: usize, lambda: Option<&[i64]>, registry: Option<&Path>) -> Result<Outcome> {
    check_genus(g, 64)?;
    let hw = highest_weight(g, lambda)?;
    let reg = load_registry(registry)?;
    let params = enumerate_parameters(&hw, &reg)?;
    let mut table = Table::new(&["shape", "multiplicity", "r"]);
    let mut rows = Vec::new();
    for p in &params {
        table.push(vec![p.shape(), p.multiplicity().to_string(), p.r().to_string()]);
        rows.push(json!({
            "shape": p.shape(),
            "multiplicity": p.multiplicity(),
            "r": p.r(),
            "standard_dim": p.standard_dim(),
            "field_degree": p.field_degree(),
            "factors": p.factors().map(|f| json!({ "block": f.shape(), "label": f.label, "d": f.d })).collect::<Vec<_>>(),
        }));
    }
    let mut warnings = Vec::new();
    if hw.weight() % 2 != 0 {
        warnings.push(format!("odd weight: w(lambda) = {}, no parameter contributes", hw.weight()));
    }
    Ok(Outcome {
        inputs: json!({ "g": g, "lambda": hw.lambda(), "registry": registry.map(|p| p.display().to_string()) }),
        citations: vec![
            "Arthur's endoscopic classification for symplectic groups, parameters unramified at every prime",
            "classification of level-one cuspidal algebraic representations of GL_n of motivic weight at most 22",
        ],
        result: json!({
            "genus": g,
            "lambda": hw.lambda(),
            "tau": hw.tau(),
            "registry": { "complete_up_to_doubled": reg.bound_doubled(), "ingested": reg.ingested_count() },
            "count": params.len(),
            "parameters": rows,
        }),
        warnings,
        table,
    })
}

pub enum SignsArg {
    Default,
    Both,
    File(PathBuf),
}

impl SignsArg {
    pub fn parse(s: &str) -> SignsArg {
        match s {
            "default" => SignsArg::Default,
            "both" => SignsArg::Both,
            path => SignsArg::File(PathBuf::from(path)),
        }
    }
}

pub fn ih(
    g: usize,
    lambda: Option<&[i64]>,
    registry: Option<&Path>,
    signs: &SignsArg,
    hodge: bool,
) -> Result<Outcome> {
    check_genus(g, 64)?;
    let hw = highest_weight(g, lambda)?;
    let reg = load_registry(registry)?;
    let (policy, signs_input) = match signs {
        SignsArg::Default => (SignPolicy::Bundled, "default".to_string()),
        SignsArg::Both => (SignPolicy::EmitBoth, "both".to_string()),
        SignsArg::File(p) => (SignPolicy::Table(SignTable::from_reader(open(p)?)?), p.display().to_string()),
    };
    let report = ih_betti(&hw, &reg, &policy, hodge)?;
    let mut table = Table::new(&["degree", "dimension"]);
    if let Some(b) = &report.betti {
        for (k, d) in b.iter().enumerate() {
            table.push(vec![k.to_string(), d.to_string()]);
        }
    }
    let warnings = report.warnings.clone();
    Ok(Outcome {
        inputs: json!({
            "g": g,
            "lambda": hw.lambda(),
            "signs": signs_input,
            "hodge": hodge,
            "registry": registry.map(|p| p.display().to_string()),
        }),
        citations: vec![
            "intersection cohomology of the Satake compactification equals L^2 cohomology",
            "each Arthur parameter contributes the spin representation restricted along its SL_2 and centralizer",
            "a factor nu_d contributes a primitive class in degree g(g+1)/2 - d + 1",
        ],
        result: serde_json::to_value(&report)?,
        warnings,
        table,
    })
}

fn cell_text(v: &TableValue) -> String {
    match v {
        TableValue::Exact(x) => x.to_string(),
        TableValue::AtLeast { at_least } => format!(">={at_least}"),
    }
}

pub fn tables(id: Option<&str>) -> Result<Outcome> {
    let ids: Vec<&str> = match id {
        Some(i) => vec![i],
        None => TABLE_IDS.to_vec(),
    };
    let list = ids.iter().map(|i| reference_table(i)).collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(&["id", "index", "value"]);
    for t in &list {
        for (i, v) in t.indices.iter().zip(&t.values) {
            table.push(vec![t.id.clone(), i.to_string(), cell_text(v)]);
        }
    }
    let result = match id {
        Some(_) => serde_json::to_value(&list[0])?,
        None => json!({ "tables": list }),
    };
    Ok(Outcome {
        inputs: json!({ "id": id }),
        citations: vec!["published Betti numbers, Euler characteristics and class counts, transcribed exactly"],
        result,
        warnings: Vec::new(),
        table,
    })
}

pub fn stable(space: StableSpace, max_degree: usize) -> Result<Outcome> {
    let coeffs = stable_series(space, max_degree)?;
    let mut table = Table::new(&["degree", "dimension"]);
    for (k, c) in coeffs.iter().enumerate() {
        table.push(vec![k.to_string(), c.to_string()]);
    }
    Ok(Outcome {
        inputs: json!({ "space": space, "max_degree": max_degree }),
        citations: vec![
            "Borel stability: H^k(A_g) is Q[lambda_1, lambda_3, lambda_5, ...] for k < g",
            "stable cohomology of the Satake compactification adds classes in degrees 6, 10, 14, ...",
            "stable cohomology of the n-fold universal abelian variety is free over that of A_g on degree 2 classes",
        ],
        result: json!({
            "space": space,
            "max_degree": max_degree,
            "generator_degrees": space.generator_degrees(max_degree),
            "coefficients": coeffs,
            "valid_range": space.validity(),
        }),
        warnings: Vec::new(),
        table,
    })
}
