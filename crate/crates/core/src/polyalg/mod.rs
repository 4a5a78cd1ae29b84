//! Exact sparse multivariate polynomials and rational functions over `Q`.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] under graded
//! lexicographic order, with the arena's variable order breaking ties. The
//! canonical term order (used by the text format and by "leading term") is
//! descending grlex.

mod arena;
mod dd;
mod eval;
mod monomial;
mod polynomial;
mod ratfn;
mod text;

pub use arena::VariableArena;
pub use dd::Dd;
pub(crate) use eval::{lift, lower};
pub use eval::{CompiledPoly, EvalScalar, Precision};
pub use monomial::Monomial;
pub(crate) use polynomial::mul_into;
pub use polynomial::Polynomial;
pub use ratfn::RationalFunction;
pub use text::TermRepr;

pub use num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
