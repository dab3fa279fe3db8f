use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::prime::{is_prime, mul_mod, pow_mod};
use super::{parse_rational, Field, FieldError, Modular, RatFunc, Q};

/// Which field a run works over, as chosen on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Rational,
    Prime(u64),
    /// `Q(t1, ..., tr)`.
    RationalFunction(usize),
}

impl FromStr for FieldKind {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FieldError::Parse(s.to_string());
        if s == "q" {
            return Ok(FieldKind::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p.parse().map_err(|_| err())?;
            if !is_prime(p) {
                return Err(err());
            }
            return Ok(FieldKind::Prime(p));
        }
        if let Some(r) = s.strip_prefix("qt:") {
            return Ok(FieldKind::RationalFunction(r.parse().map_err(|_| err())?));
        }
        Err(err())
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "q"),
            FieldKind::Prime(p) => write!(f, "fp:{p}"),
            FieldKind::RationalFunction(r) => write!(f, "qt:{r}"),
        }
    }
}

impl FieldKind {
    /// Moves a scalar into this field.
    pub fn embed(&self, x: &FieldScalar) -> Result<FieldScalar, FieldError> {
        let target = match self {
            FieldKind::Rational => FieldScalar::Rational(Q::zero()),
            FieldKind::Prime(p) => FieldScalar::Modular {
                value: 0,
                modulus: *p,
            },
            FieldKind::RationalFunction(_) => FieldScalar::Function(RatFunc::zero()),
        };
        Ok(FieldScalar::unify(&target, x)?.1)
    }

    /// The indeterminate `t_{var+1}`, if this field has it.
    pub fn indeterminate(&self, var: usize) -> Option<FieldScalar> {
        match self {
            FieldKind::RationalFunction(r) if var < *r => {
                Some(FieldScalar::Function(RatFunc::var(var)))
            }
            _ => None,
        }
    }
}

/// A scalar tagged with its field at runtime.
///
/// Plain rationals act as literals: combined with a prime-field or
/// rational-function value they are moved into that field first. Mixing two
/// different prime fields, or a prime field with rational functions, panics
/// in the operator impls and is reported by [`FieldScalar::checked`].
#[derive(Clone)]
pub enum FieldScalar {
    Rational(Q),
    Modular { value: u64, modulus: u64 },
    Function(RatFunc<Q>),
}

fn rational_mod(q: &Q, p: u64) -> Result<u64, FieldError> {
    let pb = BigInt::from(p);
    let n = q.numer().mod_floor(&pb).to_u64().unwrap();
    let d = q.denom().mod_floor(&pb).to_u64().unwrap();
    if d == 0 {
        return Err(FieldError::Mismatch(q.to_string(), format!("fp:{p}")));
    }
    Ok(mul_mod(n, pow_mod(d, p - 2, p), p))
}

impl FieldScalar {
    pub fn kind(&self) -> FieldKind {
        match self {
            FieldScalar::Rational(_) => FieldKind::Rational,
            FieldScalar::Modular { modulus, .. } => FieldKind::Prime(*modulus),
            FieldScalar::Function(f) => {
                FieldKind::RationalFunction(f.max_var().map_or(0, |v| v + 1))
            }
        }
    }

    /// Brings two scalars into a common field.
    pub fn unify(a: &Self, b: &Self) -> Result<(Self, Self), FieldError> {
        use FieldScalar::*;
        let mismatch = || FieldError::Mismatch(a.kind().to_string(), b.kind().to_string());
        Ok(match (a, b) {
            (Rational(_), Rational(_)) | (Function(_), Function(_)) => (a.clone(), b.clone()),
            (Modular { modulus: p, .. }, Modular { modulus: q, .. }) => {
                if p != q {
                    return Err(mismatch());
                }
                (a.clone(), b.clone())
            }
            (Rational(x), Modular { modulus, .. }) => (
                Modular {
                    value: rational_mod(x, *modulus)?,
                    modulus: *modulus,
                },
                b.clone(),
            ),
            (Modular { modulus, .. }, Rational(y)) => (
                a.clone(),
                Modular {
                    value: rational_mod(y, *modulus)?,
                    modulus: *modulus,
                },
            ),
            (Rational(x), Function(_)) => (Function(RatFunc::constant(x.clone())), b.clone()),
            (Function(_), Rational(y)) => (a.clone(), Function(RatFunc::constant(y.clone()))),
            (Modular { .. }, Function(_)) | (Function(_), Modular { .. }) => return Err(mismatch()),
        })
    }

    /// Checked arithmetic: reports field mismatches and division by zero.
    pub fn checked(&self, other: &Self, op: super::ArithOp) -> Result<Self, FieldError> {
        use super::ArithOp::*;
        use FieldScalar::*;
        let (a, b) = Self::unify(self, other)?;
        if op == Div && b.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match (a, b) {
            (Rational(x), Rational(y)) => Rational(match op {
                Add => x + y,
                Sub => x - y,
                Mul => x * y,
                Div => x / y,
            }),
            (
                Modular {
                    value: x,
                    modulus: p,
                },
                Modular { value: y, .. },
            ) => {
                let value = match op {
                    Add => (x + y) % p,
                    Sub => (x + p - y) % p,
                    Mul => mul_mod(x, y, p),
                    Div => mul_mod(x, pow_mod(y, p - 2, p), p),
                };
                Modular { value, modulus: p }
            }
            (Function(x), Function(y)) => Function(match op {
                Add => x + y,
                Sub => x - y,
                Mul => x * y,
                Div => x / y,
            }),
            _ => unreachable!("unify returns matching variants"),
        })
    }

    fn op(self, other: Self, op: super::ArithOp) -> Self {
        match self.checked(&other, op) {
            Ok(v) => v,
            Err(e) => panic!("{e}"),
        }
    }

    /// Parses a scalar literal (`3`, `-2/5`) into the given field.
    pub fn parse_in(text: &str, kind: FieldKind) -> Result<Self, FieldError> {
        kind.embed(&FieldScalar::Rational(parse_rational(text)?))
    }
}

impl PartialEq for FieldScalar {
    fn eq(&self, other: &Self) -> bool {
        use FieldScalar::*;
        match Self::unify(self, other) {
            Ok((Rational(x), Rational(y))) => x == y,
            Ok((Modular { value: x, .. }, Modular { value: y, .. })) => x == y,
            Ok((Function(x), Function(y))) => x == y,
            _ => false,
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(q) => write!(f, "{q}"),
            FieldScalar::Modular { value, .. } => write!(f, "{value}"),
            FieldScalar::Function(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.kind())
    }
}

macro_rules! scalar_op {
    ($tr:ident, $m:ident, $op:ident) => {
        impl $tr for FieldScalar {
            type Output = Self;
            fn $m(self, rhs: Self) -> Self {
                self.op(rhs, super::ArithOp::$op)
            }
        }
    };
}

scalar_op!(Add, add, Add);
scalar_op!(Sub, sub, Sub);
scalar_op!(Mul, mul, Mul);
scalar_op!(Div, div, Div);

impl Neg for FieldScalar {
    type Output = Self;
    fn neg(self) -> Self {
        match self {
            FieldScalar::Rational(q) => FieldScalar::Rational(-q),
            FieldScalar::Modular { value, modulus } => FieldScalar::Modular {
                value: (modulus - value) % modulus,
                modulus,
            },
            FieldScalar::Function(r) => FieldScalar::Function(-r),
        }
    }
}

impl Zero for FieldScalar {
    fn zero() -> Self {
        FieldScalar::Rational(Q::zero())
    }
    fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(q) => q.is_zero(),
            FieldScalar::Modular { value, .. } => *value == 0,
            FieldScalar::Function(r) => r.is_zero(),
        }
    }
}

impl One for FieldScalar {
    fn one() -> Self {
        FieldScalar::Rational(Q::one())
    }
}

impl Field for FieldScalar {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldScalar::Rational(q) => FieldScalar::Rational(q.recip()),
            FieldScalar::Modular { value, modulus } => FieldScalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
            FieldScalar::Function(r) => FieldScalar::Function(r.inverse()?),
        })
    }

    fn from_int(n: i64) -> Self {
        FieldScalar::Rational(Q::from_int(n))
    }

    fn modular_image(&self) -> Option<Modular> {
        match self {
            FieldScalar::Rational(q) => q.modular_image(),
            FieldScalar::Modular { .. } => None,
            FieldScalar::Function(r) => r.modular_image(),
        }
    }

    fn is_compound(&self) -> bool {
        match self {
            FieldScalar::Rational(q) => !q.is_integer() || q.is_negative(),
            FieldScalar::Modular { .. } => false,
            FieldScalar::Function(r) => r.is_compound(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ArithOp;

    fn modp(v: u64, p: u64) -> FieldScalar {
        FieldScalar::Modular {
            value: v,
            modulus: p,
        }
    }

    #[test]
    fn field_kind_parsing() {
        assert_eq!("q".parse::<FieldKind>().unwrap(), FieldKind::Rational);
        assert_eq!("fp:7".parse::<FieldKind>().unwrap(), FieldKind::Prime(7));
        assert_eq!(
            "qt:2".parse::<FieldKind>().unwrap(),
            FieldKind::RationalFunction(2)
        );
        assert!("fp:8".parse::<FieldKind>().is_err());
    }

    #[test]
    fn modular_arithmetic_in_f5() {
        assert_eq!(modp(3, 5) * modp(4, 5), modp(2, 5));
    }

    #[test]
    fn literals_coerce() {
        let half = FieldScalar::Rational(Q::new(1.into(), 2.into()));
        // 1/2 = 4 in F7
        assert_eq!(half.clone() + modp(0, 7), modp(4, 7));
        let t = FieldKind::RationalFunction(1).indeterminate(0).unwrap();
        assert_eq!(t.clone() * t.inverse().unwrap(), FieldScalar::one());
    }

    #[test]
    fn mismatches_are_errors() {
        assert!(matches!(
            modp(1, 5).checked(&modp(1, 7), ArithOp::Add),
            Err(FieldError::Mismatch(_, _))
        ));
        let t = FieldKind::RationalFunction(1).indeterminate(0).unwrap();
        assert!(modp(1, 5).checked(&t, ArithOp::Mul).is_err());
        assert_eq!(
            modp(1, 5).checked(&modp(0, 5), ArithOp::Div),
            Err(FieldError::DivisionByZero)
        );
    }
}
