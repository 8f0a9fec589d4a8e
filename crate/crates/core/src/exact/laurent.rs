//! Sparse Laurent polynomials in one or two variables with rational
//! coefficients.
//!
//! The second variable is conventionally `S` (circle-action grading) and the
//! first is `T` (Lefschetz grading); one-variable polynomials only use `T`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;

/// Exponent pair `[t, s]`. One-variable polynomials keep `s = 0`.
pub type Exponent = [i64; 2];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: u8,
    terms: BTreeMap<Exponent, Rational>,
}

impl LaurentPoly {
    pub fn zero(vars: u8) -> LaurentPoly {
        assert!(vars == 1 || vars == 2, "only one or two variables are supported");
        LaurentPoly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: u8) -> LaurentPoly {
        LaurentPoly::constant(vars, Rational::one())
    }

    pub fn constant(vars: u8, c: Rational) -> LaurentPoly {
        LaurentPoly::monomial(vars, [0, 0], c)
    }

    /// `c * T^e[0] * S^e[1]`.
    pub fn monomial(vars: u8, e: Exponent, c: Rational) -> LaurentPoly {
        let mut p = LaurentPoly::zero(vars);
        assert!(vars == 2 || e[1] == 0, "S exponent in a one-variable polynomial");
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// One-variable polynomial from `(exponent, coefficient)` pairs.
    pub fn from_t_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> LaurentPoly {
        let mut p = LaurentPoly::zero(1);
        for (e, c) in terms {
            p.add_term([e, 0], Rational::from(c));
        }
        p
    }

    /// `T^a + T^{-a}`.
    pub fn t_pair(a: i64) -> LaurentPoly {
        LaurentPoly::from_t_terms([(a, 1), (-a, 1)])
    }

    pub fn vars(&self) -> u8 {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exponent) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `T^e` in a one-variable polynomial.
    pub fn coeff_t(&self, e: i64) -> Rational {
        self.coeff([e, 0])
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        assert!(self.vars == 2 || e[1] == 0, "S exponent in a one-variable polynomial");
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.vars);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(*e, v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one(self.vars);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Sum of all coefficients (value at T = S = 1).
    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().sum()
    }

    /// Substitute S = 1, giving a one-variable polynomial in T.
    pub fn at_s_one(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(1);
        for (e, c) in &self.terms {
            out.add_term([e[0], 0], c.clone());
        }
        out
    }

    /// Embed a one-variable polynomial into the two-variable ring.
    pub fn with_s(&self) -> LaurentPoly {
        LaurentPoly { vars: 2, terms: self.terms.clone() }
    }

    /// Substitute T -> T^{-1} and S -> S^{-1}.
    pub fn invert(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.vars);
        for (e, c) in &self.terms {
            out.terms.insert([-e[0], -e[1]], c.clone());
        }
        out
    }

    /// Substitute T -> T^{-1} only.
    pub fn invert_t(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.vars);
        for (e, c) in &self.terms {
            out.terms.insert([-e[0], e[1]], c.clone());
        }
        out
    }

    /// Substitute S -> S^{-1} only.
    pub fn invert_s(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.vars);
        for (e, c) in &self.terms {
            out.terms.insert([e[0], -e[1]], c.clone());
        }
        out
    }

    /// Divide every exponent by two. Returns `None` if some exponent is odd.
    pub fn halve_exponents(&self) -> Option<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.vars);
        for (e, c) in &self.terms {
            if e[0] % 2 != 0 || e[1] % 2 != 0 {
                return None;
            }
            out.terms.insert([e[0] / 2, e[1] / 2], c.clone());
        }
        Some(out)
    }

    pub fn max_t_exponent(&self) -> Option<i64> {
        self.terms.keys().map(|e| e[0]).max()
    }

    pub fn min_t_exponent(&self) -> Option<i64> {
        self.terms.keys().map(|e| e[0]).min()
    }

    /// True if every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(Rational::is_integer)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.vars = self.vars.max(rhs.vars);
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.vars = self.vars.max(rhs.vars);
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.vars.max(rhs.vars));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1]], ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (neg, mag) = if c.is_negative() { (true, c.abs()) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors = Vec::new();
            if self.vars == 2 && e[1] != 0 {
                factors.push(if e[1] == 1 { "S".to_string() } else { format!("S^{}", e[1]) });
            }
            if e[0] != 0 {
                factors.push(if e[0] == 1 { "T".to_string() } else { format!("T^{}", e[0]) });
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_pairs() {
        // (T + T^-1)(T^2 + T^-2) = T^3 + T + T^-1 + T^-3
        let p = &LaurentPoly::t_pair(1) * &LaurentPoly::t_pair(2);
        assert_eq!(p, LaurentPoly::from_t_terms([(3, 1), (1, 1), (-1, 1), (-3, 1)]));
        assert_eq!(p.eval_at_one(), Rational::from(4));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = LaurentPoly::t_pair(3);
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
    }

    #[test]
    fn halving() {
        let p = LaurentPoly::from_t_terms([(4, 1), (-2, 3)]);
        assert_eq!(p.halve_exponents().unwrap(), LaurentPoly::from_t_terms([(2, 1), (-1, 3)]));
        assert!(LaurentPoly::from_t_terms([(3, 1)]).halve_exponents().is_none());
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_t_terms([(2, 1), (0, -2), (-1, 3)]);
        assert_eq!(p.to_string(), "T^2 - 2 + 3*T^-1");
    }
}
