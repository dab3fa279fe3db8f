//! Exact computation with skew power-series extensions of rational series
//! rings, Leavitt algebras and their `K₀` groups, and generator matrices
//! realizing homomorphisms between cyclic groups.
//!
//! Everything is generic over a [`field::Field`]; the aliases below fix the
//! common choices.

pub mod field;
pub mod freealg;
pub mod kzero;
pub mod leavitt;
pub mod linalg;
pub mod ratseries;
pub mod realize;
pub mod selftest;
pub mod skewring;
pub mod word;

pub use field::{Field, FieldScalar, Fp, RatFunc, Q};
pub use word::Word;

/// The prime field with seven elements.
pub type F7 = field::Fp<7>;
/// Rational functions in `t1, t2, ...` over `ℚ`.
pub type Qt = field::RatFunc<Q>;
/// Noncommutative polynomials over `ℚ`.
pub type QPoly = freealg::FreeElem<Q>;
/// Rational series over `ℚ`.
pub type QSeries = ratseries::LinRep<Q>;
/// Rational series over `ℚ(t)`.
pub type QtSeries = ratseries::LinRep<Qt>;
/// Truncated series over `ℚ`.
pub type QTrunc = ratseries::TruncSeries<Q>;
/// The skew extension over rational series with rational coefficients.
pub type QSkew = skewring::SkewElem<QSeries>;
/// Elements of the free algebra on `x_i, y_i` over `ℚ`.
pub type QLeavitt = leavitt::UElem<Q>;
