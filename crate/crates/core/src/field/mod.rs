//! Exact scalar fields.
//!
//! Everything above this module is generic over [`Field`]. Concrete fields:
//! the rationals [`Q`], prime fields [`Fp`] with a compile-time modulus,
//! rational functions [`RatFunc`] over any of those, and the runtime-tagged
//! [`FieldScalar`] used at the command-line boundary.

mod heugcd;
mod poly;
mod prime;
mod ratfunc;
mod scalar;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use poly::MPoly;
pub use prime::Fp;
pub use ratfunc::RatFunc;
pub use scalar::{FieldKind, FieldScalar};

/// Prime field used for cheap rank certificates.
pub type Modular = Fp<2_147_483_647>;

/// The rational numbers.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(String, String),
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

/// An exact commutative field.
///
/// Values are kept in canonical form, so `==` is structural equality.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Image of an integer under the unique ring map from the integers.
    fn from_int(n: i64) -> Self;

    /// True when printing needs parentheses inside a product.
    fn is_compound(&self) -> bool {
        false
    }

    /// Monic gcd of nonzero univariate polynomials, lowest degree first,
    /// when the field has a faster method than Euclid.
    fn dense_gcd(_a: &[Self], _b: &[Self]) -> Option<Vec<Self>> {
        None
    }

    /// A nonzero `c` making `c·x` a primitive integral tuple, for fields
    /// with a notion of integrality.
    fn primitive_factor(_xs: &[Self]) -> Option<Self> {
        None
    }

    /// Replaces `v` by a nonzero multiple with smaller entries, to keep
    /// fraction-free elimination cheap.
    fn normalize_vector(_v: &mut [Self]) {}

    /// Image under a fixed ring map into [`Modular`], defined on a subring
    /// containing the integers. Vectors independent after the map are
    /// independent before it.
    fn modular_image(&self) -> Option<Modular> {
        None
    }
}

/// Checked binary operation, the single entry point for scalar arithmetic
/// where failures must be reported rather than panicking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arithmetic<F: Field>(a: &F, b: &F, op: ArithOp) -> Result<F, FieldError> {
    Ok(match op {
        ArithOp::Add => a.clone() + b.clone(),
        ArithOp::Sub => a.clone() - b.clone(),
        ArithOp::Mul => a.clone() * b.clone(),
        ArithOp::Div => {
            let inv = b.inverse().ok_or(FieldError::DivisionByZero)?;
            a.clone() * inv
        }
    })
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_compound(&self) -> bool {
        !self.is_integer() || self.is_negative()
    }

    fn dense_gcd(a: &[Self], b: &[Self]) -> Option<Vec<Self>> {
        heugcd::gcd(a, b)
    }

    fn primitive_factor(xs: &[Self]) -> Option<Self> {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for x in xs.iter().filter(|x| !x.is_zero()) {
            den = den.lcm(x.denom());
            num = num.gcd(x.numer());
        }
        (!num.is_zero()).then(|| BigRational::new(den, num))
    }

    fn modular_image(&self) -> Option<Modular> {
        let p = BigInt::from(Modular::modulus());
        let den = Modular::new(self.denom().mod_floor(&p).to_i64()?);
        let num = Modular::new(self.numer().mod_floor(&p).to_i64()?);
        Some(num * den.inverse()?)
    }

    fn normalize_vector(v: &mut [Self]) {
        if let Some(c) = Self::primitive_factor(v) {
            if !c.is_one() {
                for x in v.iter_mut() {
                    *x = &*x * &c;
                }
            }
        }
    }
}

/// Parses `a` or `a/b` into a rational.
pub fn parse_rational(text: &str) -> Result<Q, FieldError> {
    let text = text.trim();
    let err = || FieldError::Parse(text.to_string());
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(FieldError::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| err())?)),
    }
}
