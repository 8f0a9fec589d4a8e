//! Exact arithmetic: rationals, Bernoulli numbers, cyclotomic polynomials
//! and Laurent polynomials.

mod bernoulli;
mod cyclotomic;
mod laurent;
mod matrix;
mod rational;

pub use bernoulli::{bernoulli, binomial, double_factorial, factorial, zeta_negative};
pub use cyclotomic::{
    cyclotomic, divisors, euler_phi, gcd, lcm, negate_cyclotomic_index, poly_mul, CyclotomicPoly,
};
pub use laurent::{Exponent, LaurentPoly};
pub use matrix::rank;
pub use rational::{q, ParseRationalError, Rational};
