//! Generator matrices realizing a group homomorphism `ℤ_n → ℤ_m` between
//! the `K₀` groups of the quotients `T_n`, their verification, and the
//! bookkeeping for inductive chains of finitely generated abelian groups.
//!
//! `T_m` for `m ≥ 2` is `S/I` with letters `0..=m`; `T_0` is the union of
//! all the extensions, where equality is structural.

mod chain;
mod generators;
mod sigma;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::RatFunc;
use crate::ratseries::{LinRep, SeriesError};
use crate::skewring::SkewElem;

pub use chain::{plan_chain, ChainPlan, ChainStep, ComponentPlan, CyclicGroup};
pub use generators::{
    build_generators, verify_generators, GeneratorDoc, GeneratorMatrices, IdentityCheck,
    VerificationReport,
};
pub use sigma::{spot_check_sigma_prime, SigmaCertificate};

/// Scalars `K(t)`.
pub type Kt<F> = RatFunc<F>;
/// A matrix entry: an element of the skew extension over `K(t)_rat<X>`.
pub type Entry<F> = SkewElem<LinRep<RatFunc<F>>>;
pub type EntryMatrix<F> = Vec<Vec<Entry<F>>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error("ℤ_1 is not a valid cyclic tag")]
    TrivialTag,
    #[error("multiplication by {mult} is not a homomorphism ℤ_{from} → ℤ_{to} in canonical form")]
    InvalidSpec { from: u64, to: u64, mult: i64 },
    #[error("spot checks need a case 1 or 2 instance, got case {0}")]
    UnsupportedCase(u8),
    #[error("polynomial entry ({0}, {1}) has a nonzero constant term")]
    ConstantTerm(usize, usize),
    #[error("variable Z{0} has no generator matrix")]
    UnknownVariable(u32),
    #[error("polynomial matrix must be square and nonempty")]
    BadShape,
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("chain: {0}")]
    Chain(String),
}

/// `ℤ_m` with `m = 0` standing for `ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct CyclicTag(u64);

impl CyclicTag {
    pub fn new(m: u64) -> Result<Self, RealizeError> {
        if m == 1 {
            Err(RealizeError::TrivialTag)
        } else {
            Ok(CyclicTag(m))
        }
    }

    pub fn modulus(self) -> u64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0 == 0
    }

    /// Canonical representative: `0..m` for finite tags.
    pub fn reduce(self, x: i64) -> i64 {
        if self.0 == 0 {
            x
        } else {
            x.rem_euclid(self.0 as i64)
        }
    }
}

impl TryFrom<u64> for CyclicTag {
    type Error = RealizeError;
    fn try_from(m: u64) -> Result<Self, RealizeError> {
        CyclicTag::new(m)
    }
}

impl From<CyclicTag> for u64 {
    fn from(t: CyclicTag) -> u64 {
        t.0
    }
}

impl fmt::Display for CyclicTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            write!(f, "Z")
        } else {
            write!(f, "Z/{}", self.0)
        }
    }
}

/// Multiplication by `ℓ` from `ℤ_n` to `ℤ_m`, with `1 ≤ ℓ ≤ m` when `m ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSpec {
    pub source: CyclicTag,
    pub target: CyclicTag,
    pub mult: i64,
}

impl HomSpec {
    pub fn new(source: CyclicTag, target: CyclicTag, mult: i64) -> Result<Self, RealizeError> {
        let (n, m) = (source.0, target.0);
        let invalid = RealizeError::InvalidSpec {
            from: n,
            to: m,
            mult,
        };
        let ok = match (n, m) {
            (_, m) if m >= 2 && !(1..=m as i64).contains(&mult) => false,
            (0, 0) => true,
            (0, _) => true,
            (_, 0) => mult == 0,
            (n, m) => (mult as i128 * n as i128) % m as i128 == 0,
        };
        if ok {
            Ok(HomSpec {
                source,
                target,
                mult,
            })
        } else {
            Err(invalid)
        }
    }

    /// Brings an arbitrary multiplier into the canonical range and builds
    /// the spec.
    pub fn canonical(
        source: CyclicTag,
        target: CyclicTag,
        mult: i64,
    ) -> Result<Self, RealizeError> {
        let m = target.0 as i64;
        let mult = if m >= 2 {
            let r = mult.rem_euclid(m);
            if r == 0 {
                m
            } else {
                r
            }
        } else {
            mult
        };
        Self::new(source, target, mult)
    }

    /// Which construction applies: 1 for `n, m ≥ 2`; 2 for `n = 0, ℓ > 0`;
    /// 3 for `n = m = 0, ℓ ≤ 0`; 4 for `n ≥ 2, m = 0`.
    pub fn case(&self) -> u8 {
        match (self.source.0, self.target.0) {
            (0, _) if self.mult > 0 => 2,
            (0, _) => 3,
            (_, 0) => 4,
            _ => 1,
        }
    }

    /// `h` with `ℓn = hm` (case 1).
    pub fn h(&self) -> Option<u64> {
        (self.case() == 1).then(|| self.mult as u64 * self.source.0 / self.target.0)
    }
}

impl fmt::Display for HomSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} by {}", self.source, self.target, self.mult)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tag(m: u64) -> CyclicTag {
        CyclicTag::new(m).unwrap()
    }

    #[test]
    fn spec_validation_and_cases() {
        assert_eq!(CyclicTag::new(1), Err(RealizeError::TrivialTag));
        let s = HomSpec::new(tag(2), tag(2), 2).unwrap();
        assert_eq!((s.case(), s.h()), (1, Some(2)));
        assert_eq!(HomSpec::new(tag(2), tag(4), 2).unwrap().h(), Some(1));
        assert!(HomSpec::new(tag(2), tag(4), 1).is_err());
        assert!(HomSpec::new(tag(2), tag(3), 4).is_err());
        assert_eq!(HomSpec::new(tag(0), tag(2), 1).unwrap().case(), 2);
        assert_eq!(HomSpec::new(tag(0), tag(0), -1).unwrap().case(), 3);
        assert_eq!(HomSpec::new(tag(0), tag(0), 0).unwrap().case(), 3);
        assert_eq!(HomSpec::new(tag(3), tag(0), 0).unwrap().case(), 4);
        assert!(HomSpec::new(tag(3), tag(0), 1).is_err());
        assert_eq!(HomSpec::canonical(tag(0), tag(2), 0).unwrap().mult, 2);
        assert_eq!(HomSpec::canonical(tag(0), tag(3), -1).unwrap().mult, 2);
    }
}
