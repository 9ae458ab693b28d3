//! Categorical entropy of endofunctors of perfect derived categories of
//! finite acyclic quiver algebras.
//!
//! The engine is generic over the ground field through [`scalars::Scalar`];
//! the aliases below fix the default prime field.

pub mod algebra;
pub mod complexes;
pub mod entropy;
pub mod error;
pub mod filtrations;
pub mod functors;
pub mod random;
pub mod scalars;

pub use error::{Error, Result};

/// Default ground field, `F_1000003`.
pub type DefaultField = scalars::Zp<{ scalars::DEFAULT_PRIME }>;
/// Rational verification field.
pub type Rational = num_rational::BigRational;
/// Perfect complex over the default field.
pub type Complex = complexes::PerfComplex<DefaultField>;
