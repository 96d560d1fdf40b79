//! Exact-arithmetic constructions of elements of symmetric-group permutation
//! modules satisfying Hemmer's criterion for non-vanishing first cohomology of
//! Specht modules, built on the Graver–Jurkat construction of integral
//! designs.

pub mod arith;
pub mod blocks;
pub mod constructions;
pub mod designs;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod selftest;
pub mod specht;
pub mod wire;

pub use error::{Error, Result};
pub use scalar::{Coefficient, Field, Fp};

/// Exact integers used for coefficients and design parameters.
pub type Integer = num_bigint::BigInt;
/// Exact rationals used by the elimination routines.
pub type Rational = num_rational::BigRational;

/// Integer weighting of blocks.
pub type IntBlockVector = blocks::BlockVector<Integer>;
/// Element of `M^λ` over the integers.
pub type IntTabloidVector = specht::TabloidVector<Integer>;
/// Dense matrix over the rationals.
pub type RationalMatrix = linalg::Matrix<Rational>;
