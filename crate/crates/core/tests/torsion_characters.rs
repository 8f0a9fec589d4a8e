mod common;

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::path::PathBuf;

use agcoh::exact::{gcd, q, Rational};
use agcoh::reps::{character_at_torsion, weight_multiplicities, weyl_dimension, HighestWeight};
use agcoh::torsion::{
    central_mass, elliptic_term, enumerate_torsion_classes, parse_mass_table, Completeness, MassTable,
    TorsionClass,
};
use num::ToPrimitive;
use proptest::prelude::*;

fn arb_lambda(max_g: usize, max_entry: i64) -> impl Strategy<Value = Vec<i64>> {
    (1..=max_g).prop_flat_map(move |g| prop::collection::vec(0..=max_entry, g)).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

/// Eigenvalue pairs {x, 1/x} of a class as fractions a/n of a full turn,
/// read off the cyclotomic factors directly.
fn eigen_pairs(c: &TorsionClass) -> Vec<((u64, u64), (u64, u64))> {
    let mut out = Vec::new();
    for &(d, m) in c.parts() {
        let reps: Vec<u64> = (0..d).filter(|&k| gcd(k, d) == 1).collect();
        let pairs: Vec<(u64, u64)> = match d {
            1 => vec![(0, 0); m as usize / 2],
            2 => vec![(1, 1); m as usize / 2],
            _ => {
                let mut v = Vec::new();
                for &k in reps.iter().filter(|&&k| 2 * k < d) {
                    v.extend(std::iter::repeat((k, d - k)).take(m as usize));
                }
                v
            }
        };
        out.extend(pairs.into_iter().map(|(a, b)| ((a, d), (b, d))));
    }
    out
}

/// Trace by summing the torus character over all weights in floating point,
/// with a choice of eigenvalue from each pair and an ordering of the pairs.
fn float_trace(lambda: &[i64], c: &TorsionClass, choice: u64, rotate: usize) -> (f64, f64) {
    let hw = HighestWeight::new(lambda.to_vec()).unwrap();
    let weights = weight_multiplicities(&hw).unwrap().expand(1 << 20).unwrap();
    let mut angles: Vec<f64> = eigen_pairs(c)
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| {
            let (a, n) = if choice >> i & 1 == 0 { x } else { y };
            a as f64 / n as f64
        })
        .collect();
    let k = rotate % angles.len();
    angles.rotate_left(k);
    let (mut re, mut im) = (0.0, 0.0);
    for (mu, m) in weights {
        let phase: f64 = mu.iter().zip(&angles).map(|(&k, &a)| k as f64 * a).sum::<f64>() * TAU;
        re += m as f64 * phase.cos();
        im += m as f64 * phase.sin();
    }
    (re, im)
}

/// Weyl's dimension formula for Sp(2g) written out in coordinates.
fn weyl_oracle(lambda: &[i64]) -> Rational {
    let g = lambda.len();
    let l: Vec<i64> = (0..g).map(|i| lambda[i] + (g - i) as i64).collect();
    let r: Vec<i64> = (0..g).map(|i| (g - i) as i64).collect();
    let mut v = Rational::one();
    for i in 0..g {
        v = v * Rational::new(l[i], r[i]);
        for j in i + 1..g {
            v = v * Rational::new((l[i] - l[j]) * (l[i] + l[j]), (r[i] - r[j]) * (r[i] + r[j]));
        }
    }
    v
}

#[test]
fn class_counts_with_and_without_negation() {
    for g in 1..=5 {
        let all = enumerate_torsion_classes(g, false);
        let reps = enumerate_torsion_classes(g, true);
        let fixed = all.iter().filter(|c| c.negate() == **c).count();
        assert_eq!(all.len(), 2 * reps.len() - fixed, "g = {g}");
        let distinct: BTreeSet<&TorsionClass> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        for c in &all {
            assert_eq!(c.degree(), 2 * g as u64);
            assert_eq!(c.multiplicity(1) % 2, 0);
            assert_eq!(c.multiplicity(2) % 2, 0);
            assert_eq!(c.negate().negate(), *c);
            assert_eq!(eigen_pairs(c).len(), g);
        }
    }
}

#[test]
fn genus_one_fixture_gives_euler_characteristic_one() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/masses_g1.tsv");
    let file = std::io::BufReader::new(std::fs::File::open(path).unwrap());
    let t = parse_mass_table(file, 1, Completeness::Strict, "fixture").unwrap();
    assert_eq!(t.mass(&TorsionClass::identity(1)), central_mass(1));
    assert_eq!(elliptic_term(&HighestWeight::zero(1), &t).unwrap(), q(1, 1));
}

/// With published mass tables under AGCOH_DATA_DIR (masses_g{g}.tsv), the
/// elliptic term at the trivial system is the Euler characteristic of A_g.
#[test]
fn published_masses_reproduce_euler_characteristics() {
    let expected = [1i64, 2, 5, 9, 18, 46, 104, 200, 528];
    let Some(dir) = std::env::var_os("AGCOH_DATA_DIR").map(PathBuf::from) else {
        eprintln!("NOTICE: AGCOH_DATA_DIR not set; skipping e(A_g) checks against published mass tables");
        return;
    };
    for g in 1..=9 {
        let path = dir.join(format!("masses_g{g}.tsv"));
        let Ok(file) = std::fs::File::open(&path) else {
            eprintln!("NOTICE: {} missing; skipping e(A_{g})", path.display());
            continue;
        };
        let t = parse_mass_table(std::io::BufReader::new(file), g, Completeness::Strict, path.display().to_string())
            .unwrap();
        let e = elliptic_term(&HighestWeight::zero(g), &t).unwrap();
        assert_eq!(e, Rational::from(expected[g - 1]), "e(A_{g})");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn character_independent_of_eigenvalue_choice(
        lambda in arb_lambda(3, 3),
        idx in any::<prop::sample::Index>(),
        choice in any::<u64>(),
        rotate in 0usize..3,
    ) {
        let g = lambda.len();
        let classes = enumerate_torsion_classes(g, false);
        let c = idx.get(&classes);
        let exact = character_at_torsion(&HighestWeight::new(lambda.clone()).unwrap(), c).unwrap();
        let (re, im) = float_trace(&lambda, c, choice, rotate);
        prop_assert!(im.abs() < 1e-6, "imaginary part {}", im);
        prop_assert!((re - exact.to_f64().unwrap()).abs() < 1e-6, "{} vs {}", re, exact);
    }

    #[test]
    fn negation_acts_by_central_sign(lambda in arb_lambda(4, 3), idx in any::<prop::sample::Index>()) {
        let g = lambda.len();
        let hw = HighestWeight::new(lambda).unwrap();
        let c = idx.get(&enumerate_torsion_classes(g, false)).clone();
        let a = character_at_torsion(&hw, &c).unwrap();
        let b = character_at_torsion(&hw, &c.negate()).unwrap();
        if hw.weight() % 2 == 0 {
            prop_assert_eq!(a, b);
        } else {
            prop_assert_eq!(a, -b);
        }
    }

    #[test]
    fn weight_totals_match_weyl(lambda in arb_lambda(5, 4)) {
        let hw = HighestWeight::new(lambda.clone()).unwrap();
        let dim = Rational::from(weyl_dimension(&hw));
        prop_assert_eq!(&dim, &weyl_oracle(&lambda));
        prop_assert_eq!(&Rational::from(weight_multiplicities(&hw).unwrap().total()), &dim);
        let id = TorsionClass::identity(lambda.len());
        prop_assert_eq!(Rational::from(character_at_torsion(&hw, &id).unwrap()), dim);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn odd_weight_elliptic_term_vanishes(
        lambda in arb_lambda(3, 4).prop_filter("odd weight", |l| l.iter().sum::<i64>() % 2 == 1),
        seed in prop::collection::vec((-50i64..=50, 1i64..=30), 32),
    ) {
        let g = lambda.len();
        let reps = enumerate_torsion_classes(g, true);
        let given = reps.into_iter().zip(seed.iter().cycle()).map(|(c, &(n, d))| (c, q(n, d)));
        let t = MassTable::from_orbits(g, given, Completeness::Strict, "random").unwrap();
        prop_assert!(elliptic_term(&HighestWeight::new(lambda).unwrap(), &t).unwrap().is_zero());
    }
}
