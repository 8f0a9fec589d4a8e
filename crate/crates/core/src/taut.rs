//! The graded ring R_g generated by u_1, ..., u_g subject to
//! (1 + u_1 + ... + u_g)(1 - u_1 + ... + (-1)^g u_g) = 1.
//!
//! Elements are stored densely on the square-free monomial basis, indexed by
//! bitmask: bit `i - 1` set means `u_i` divides the monomial. The only
//! rewrite rule needed is
//!
//! ```text
//! u_k^2 -> 2 * sum_{j=0}^{k-1} (-1)^{j+k+1} u_j u_{2k-j}     (u_0 = 1, u_m = 0 for m > g)
//! ```
//!
//! Multiplication by a generator is tabulated once per genus.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::exact::{rank, LaurentPoly, Rational};

/// Largest genus the dense representation is meant for (2^12 basis elements).
pub const MAX_GENUS: usize = 12;

type Sparse = Vec<(u32, i128)>;

/// Multiplication tables for one genus.
#[derive(Debug)]
pub struct TautRing {
    genus: usize,
    /// `gen_table[k - 1][mask]` = u_k * (monomial `mask`) on the basis.
    gen_table: Vec<Vec<Sparse>>,
}

fn add_sparse(acc: &mut HashMap<u32, i128>, mask: u32, c: i128) {
    let e = acc.entry(mask).or_insert(0);
    *e = e.checked_add(c).expect("structure constant overflow");
    if *e == 0 {
        acc.remove(&mask);
    }
}

impl TautRing {
    /// Shared, lazily built ring for genus `g`.
    pub fn get(g: usize) -> Arc<TautRing> {
        static RINGS: OnceLock<Mutex<HashMap<usize, Arc<TautRing>>>> = OnceLock::new();
        let rings = RINGS.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(r) = rings.lock().unwrap().get(&g) {
            return r.clone();
        }
        let ring = Arc::new(TautRing::build(g));
        rings.lock().unwrap().entry(g).or_insert(ring).clone()
    }

    fn build(g: usize) -> TautRing {
        assert!((1..=MAX_GENUS).contains(&g), "genus {g} outside 1..={MAX_GENUS}");
        let n = 1usize << g;
        let mut memo: HashMap<(u32, usize), Sparse> = HashMap::new();
        let gen_table = (1..=g)
            .map(|k| (0..n as u32).map(|mask| Self::mul_gen(g, mask, k, &mut memo)).collect())
            .collect();
        TautRing { genus: g, gen_table }
    }

    /// u_k * monomial(mask), rewriting squares with the largest squared index first.
    fn mul_gen(g: usize, mask: u32, k: usize, memo: &mut HashMap<(u32, usize), Sparse>) -> Sparse {
        if k == 0 {
            return vec![(mask, 1)];
        }
        if k > g {
            return Vec::new();
        }
        let bit = 1u32 << (k - 1);
        if mask & bit == 0 {
            return vec![(mask | bit, 1)];
        }
        if let Some(v) = memo.get(&(mask, k)) {
            return v.clone();
        }
        let rest = mask & !bit;
        let mut acc: HashMap<u32, i128> = HashMap::new();
        for (j, hi, coeff) in square_rule(g, k) {
            for (m1, c1) in Self::mul_gen(g, rest, j, memo) {
                for (m2, c2) in Self::mul_gen(g, m1, hi, memo) {
                    add_sparse(&mut acc, m2, coeff as i128 * c1 * c2);
                }
            }
        }
        let mut out: Sparse = acc.into_iter().collect();
        out.sort_unstable();
        memo.insert((mask, k), out.clone());
        out
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        1 << self.genus
    }

    /// Mask of the socle u_1 u_2 ... u_g.
    pub fn socle_mask(&self) -> u32 {
        ((1u64 << self.genus) - 1) as u32
    }

    fn times_generator(&self, x: &[Rational], k: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); x.len()];
        if k == 0 {
            return x.to_vec();
        }
        if k > self.genus {
            return out;
        }
        for (mask, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (m, s) in &self.gen_table[k - 1][mask] {
                out[*m as usize] += c * Rational::from(*s as i64);
            }
        }
        out
    }
}

/// Terms `(j, 2k - j, coefficient)` of the rewrite u_k^2 -> sum coefficient * u_j u_{2k-j}
/// in genus `g`, after dropping generators of index > g.
pub fn square_rule(g: usize, k: usize) -> Vec<(usize, usize, i64)> {
    (0..k)
        .filter(|&j| 2 * k - j <= g)
        .map(|j| {
            let sign = if (j + k + 1) % 2 == 0 { 1 } else { -1 };
            (j, 2 * k - j, 2 * sign)
        })
        .collect()
}

/// Weighted degree sum_{i in mask} i (the cohomological degree is twice this).
pub fn mask_degree(mask: u32) -> usize {
    (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).sum()
}

/// Top weighted degree g(g+1)/2.
pub fn top_degree(g: usize) -> usize {
    g * (g + 1) / 2
}

#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    genus: usize,
    coeffs: Vec<Rational>,
}

impl RingElement {
    pub fn zero(g: usize) -> RingElement {
        RingElement { genus: g, coeffs: vec![Rational::zero(); 1 << g] }
    }

    pub fn one(g: usize) -> RingElement {
        RingElement::basis(g, 0)
    }

    /// The square-free monomial with the given bitmask.
    pub fn basis(g: usize, mask: u32) -> RingElement {
        assert!((mask as u64) < (1u64 << g), "monomial mask outside genus {g}");
        let mut e = RingElement::zero(g);
        e.coeffs[mask as usize] = Rational::one();
        e
    }

    /// The monomial prod_{i in subset} u_i, subset given by indices.
    pub fn monomial(g: usize, indices: &[usize]) -> RingElement {
        normal_form(&[(exponents_of(indices), Rational::one())], g)
    }

    /// The generator u_k (zero when k > g).
    pub fn generator(g: usize, k: usize) -> RingElement {
        RingElement::monomial(g, &[k])
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coeff(&self, mask: u32) -> &Rational {
        &self.coeffs[mask as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Nonzero `(mask, coefficient)` pairs in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m as u32, c))
    }

    pub fn scale(&self, c: &Rational) -> RingElement {
        RingElement { genus: self.genus, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        check_genus(self, other)?;
        Ok(RingElement {
            genus: self.genus,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Coefficient of the socle u_1 ... u_g.
    pub fn socle_coefficient(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    fn times_generator(&self, ring: &TautRing, k: usize) -> RingElement {
        RingElement { genus: self.genus, coeffs: ring.times_generator(&self.coeffs, k) }
    }

    /// Render with a generator letter, e.g. `u` or `lambda`.
    pub fn render(&self, letter: &str) -> String {
        let parts: Vec<String> = self
            .terms()
            .map(|(mask, c)| {
                let mono: String = (1..=self.genus)
                    .filter(|i| mask & (1 << (i - 1)) != 0)
                    .map(|i| format!("{letter}{i}"))
                    .collect();
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => mono,
                    (false, false) => format!("{c}*{mono}"),
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("u"))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_{}[{}]", self.genus, self)
    }
}

fn exponents_of(indices: &[usize]) -> Vec<u32> {
    let top = indices.iter().copied().max().unwrap_or(0);
    let mut n = vec![0u32; top];
    for &i in indices {
        assert!(i >= 1, "generator indices start at 1");
        n[i - 1] += 1;
    }
    n
}

fn check_genus(a: &RingElement, b: &RingElement) -> Result<()> {
    if a.genus != b.genus {
        return Err(Error::GenusMismatch { left: a.genus, right: b.genus });
    }
    Ok(())
}

/// A formal polynomial in u_1, u_2, ...: list of (exponent vector, coefficient),
/// where `exponents[i]` is the power of u_{i+1}.
pub type FormalPoly = [(Vec<u32>, Rational)];

/// Reduce a formal polynomial to the square-free basis of R_g. Generators of
/// index greater than g are zero.
pub fn normal_form(expr: &FormalPoly, g: usize) -> RingElement {
    let ring = TautRing::get(g);
    let mut total = RingElement::zero(g);
    for (exps, c) in expr {
        if c.is_zero() {
            continue;
        }
        let mut x = RingElement::one(g);
        // multiply highest generators first so squares are met as late as possible
        for (i, &n) in exps.iter().enumerate().rev() {
            for _ in 0..n {
                x = x.times_generator(&ring, i + 1);
            }
        }
        for (t, v) in total.coeffs.iter_mut().zip(&x.coeffs) {
            *t += v * c;
        }
    }
    total
}

/// Product in R_g.
pub fn multiply(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    check_genus(a, b)?;
    let ring = TautRing::get(a.genus);
    let mut out = RingElement::zero(a.genus);
    for (mask, c) in b.terms() {
        let mut x = a.clone();
        for k in (1..=a.genus).rev() {
            if mask & (1 << (k - 1)) != 0 {
                x = x.times_generator(&ring, k);
            }
        }
        for (o, v) in out.coeffs.iter_mut().zip(&x.coeffs) {
            *o += v * c;
        }
    }
    Ok(out)
}

/// Gorenstein pairing: socle coefficient of a * b.
pub fn socle_pairing(a: &RingElement, b: &RingElement) -> Result<Rational> {
    Ok(multiply(a, b)?.socle_coefficient())
}

/// sum_k dim R_g^{2k} T^{2k} = prod_{k=1}^{g} (1 + T^{2k}).
pub fn poincare_polynomial(g: usize) -> LaurentPoly {
    (1..=g as i64).fold(LaurentPoly::one(1), |acc, k| {
        &acc * &LaurentPoly::from_t_terms([(0, 1), (2 * k, 1)])
    })
}

/// dim R_g^{2k} for k = 0..=g(g+1)/2, counted directly on the basis.
pub fn graded_dimensions(g: usize) -> Vec<u64> {
    let mut dims = vec![0u64; top_degree(g) + 1];
    for mask in 0..(1u32 << g) {
        dims[mask_degree(mask)] += 1;
    }
    dims
}

/// Basis masks of weighted degree `k`.
pub fn basis_of_degree(g: usize, k: usize) -> Vec<u32> {
    (0..(1u32 << g)).filter(|&m| mask_degree(m) == k).collect()
}

/// Matrix of the socle pairing between degree `k` and degree g(g+1)/2 - k.
pub fn pairing_matrix(g: usize, k: usize) -> Vec<Vec<Rational>> {
    let left = basis_of_degree(g, k);
    let right = basis_of_degree(g, top_degree(g) - k);
    left.iter()
        .map(|&a| {
            let ea = RingElement::basis(g, a);
            right
                .iter()
                .map(|&b| socle_pairing(&ea, &RingElement::basis(g, b)).expect("same genus"))
                .collect()
        })
        .collect()
}

/// True if every graded piece of the pairing is square and nonsingular.
pub fn pairing_is_perfect(g: usize) -> bool {
    (0..=top_degree(g)).all(|k| {
        let m = pairing_matrix(g, k);
        let n = m.len();
        n == basis_of_degree(g, top_degree(g) - k).len() && rank(m) == n
    })
}

/// Outcome of comparing R_g / (u_g) with R_{g-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCheck {
    pub genus: usize,
    /// Basis correspondence `(mask in R_g, mask in R_{g-1})` for monomials not divisible by u_g.
    pub correspondence: Vec<(u32, u32)>,
    /// Rewrite rules of R_g with u_g = 0 coincide with those of R_{g-1}.
    pub rules_match: bool,
    /// Products of basis elements agree after dropping monomials divisible by u_g.
    pub products_match: bool,
}

impl QuotientCheck {
    pub fn is_isomorphism(&self) -> bool {
        self.rules_match && self.products_match
    }
}

/// Check R_g / (u_g) = R_{g-1} on rewrite rules and on all basis products.
pub fn quotient_by_top(g: usize) -> QuotientCheck {
    assert!(g >= 2, "quotient_by_top needs g >= 2");
    let rules_match = (1..g).all(|k| {
        let reduced: Vec<_> = square_rule(g, k).into_iter().filter(|&(_, hi, _)| hi != g).collect();
        reduced == square_rule(g - 1, k)
    }) && square_rule(g, g).is_empty();

    let small = 1u32 << (g - 1);
    let correspondence: Vec<(u32, u32)> = (0..small).map(|m| (m, m)).collect();
    let products_match = (0..small).all(|a| {
        (a..small).all(|b| {
            let big = multiply(&RingElement::basis(g, a), &RingElement::basis(g, b)).unwrap();
            let low = multiply(&RingElement::basis(g - 1, a), &RingElement::basis(g - 1, b)).unwrap();
            (0..small).all(|m| big.coeff(m) == low.coeff(m))
        })
    });
    QuotientCheck { genus: g, correspondence, rules_match, products_match }
}

/// The tautological ring of A_g is R_{g-1} with u_i read as lambda_i.
pub fn ag_tautological_genus(g: usize) -> usize {
    assert!(g >= 2, "A_1 has tautological ring Q");
    g - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn pow_u(g: usize, exps: &[u32]) -> RingElement {
        normal_form(&[(exps.to_vec(), Rational::one())], g)
    }

    #[test]
    fn genus_two_rules() {
        assert_eq!(pow_u(2, &[2]), RingElement::basis(2, 0b10).scale(&q(2, 1)));
        assert!(pow_u(2, &[0, 2]).is_zero());
        assert!(pow_u(2, &[2, 1]).is_zero());
    }

    #[test]
    fn multiply_examples() {
        let u1 = RingElement::generator(3, 1);
        let p = multiply(&u1, &u1).unwrap();
        assert_eq!(p, RingElement::generator(3, 2).scale(&q(2, 1)));

        let x = RingElement::monomial(4, &[1, 3]).add(&RingElement::generator(4, 2)).unwrap();
        assert_eq!(multiply(&RingElement::one(4), &x).unwrap(), x);

        let u1 = RingElement::generator(2, 1);
        assert!(multiply(&u1, &RingElement::monomial(2, &[1, 2])).unwrap().is_zero());
    }

    #[test]
    fn genus_mismatch_is_an_error() {
        let a = RingElement::one(2);
        let b = RingElement::one(3);
        assert!(matches!(multiply(&a, &b), Err(Error::GenusMismatch { .. })));
        assert!(socle_pairing(&a, &b).is_err());
    }

    #[test]
    fn pairing_examples() {
        let u1 = RingElement::generator(2, 1);
        let u2 = RingElement::generator(2, 2);
        let u12 = RingElement::monomial(2, &[1, 2]);
        assert_eq!(socle_pairing(&u1, &u12).unwrap(), q(0, 1));
        assert_eq!(socle_pairing(&u1, &u2).unwrap(), q(1, 1));
        assert_eq!(socle_pairing(&u1, &pow_u(2, &[2])).unwrap(), q(2, 1));
        for g in 1..=5 {
            let socle = RingElement::basis(g, (1 << g) - 1);
            assert_eq!(socle_pairing(&RingElement::one(g), &socle).unwrap(), q(1, 1));
        }
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare_polynomial(1), LaurentPoly::from_t_terms([(0, 1), (2, 1)]));
        assert_eq!(
            poincare_polynomial(3),
            LaurentPoly::from_t_terms([(0, 1), (2, 1), (4, 1), (6, 2), (8, 1), (10, 1), (12, 1)])
        );
    }

    #[test]
    fn quotient_examples() {
        let q2 = quotient_by_top(2);
        assert!(q2.is_isomorphism());
        assert_eq!(q2.correspondence.len(), 2);
        // in R_1, u_1^2 = 0
        assert!(pow_u(1, &[2]).is_zero());
        assert!(quotient_by_top(3).is_isomorphism());
    }

    #[test]
    fn render() {
        let x = pow_u(2, &[3]);
        assert_eq!(x.to_string(), "2*u1u2");
        assert_eq!(x.render("lambda"), "2*lambda1lambda2");
    }
}
