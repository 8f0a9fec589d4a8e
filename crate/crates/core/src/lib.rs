//! Exact computations on the moduli space A_g of principally polarized
//! abelian varieties: the tautological ring, lambda-class intersection
//! numbers, elliptic terms of the trace formula, level-one Arthur parameters
//! and intersection cohomology of the Satake compactification.

pub mod arthur;
pub mod error;
pub mod exact;
pub mod proportionality;
pub mod reps;
pub mod spin;
pub mod tables;
pub mod taut;
pub mod torsion;

pub use error::{Error, Result};
