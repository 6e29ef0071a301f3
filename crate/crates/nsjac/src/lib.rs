//! Exact divisor-class arithmetic on (n,s) curves y^n = x^s + p(x,y) over
//! finite fields.
//!
//! The group law on the Jacobian is computed through interpolation
//! determinants in the pole-ordered monomial basis at the place at infinity:
//! a function vanishing on a given divisor is produced as a matrix kernel,
//! its residual zeros are extracted through a resultant, and those residuals
//! drive reduction, negation, addition, direct multiplication-by-n, and an
//! n-torsion criterion. Classical chord-tangent and Cantor group laws are
//! included as independent oracles for testing.

pub mod cli;
pub mod curve;
pub mod divisor;
pub mod error;
pub mod field;
pub mod jacobian;
pub mod oracle;
pub mod poly;
mod series;

pub use error::{Error, Result};
