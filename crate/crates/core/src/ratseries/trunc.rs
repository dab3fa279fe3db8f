use std::collections::BTreeMap;
use std::fmt;

use super::{LinRep, SeriesError};
use crate::field::Field;
use crate::freealg::FreeElem;
use crate::word::Word;

/// A power series known on all words shorter than its precision.
///
/// Precision `usize::MAX` marks a series known exactly (a polynomial).
/// Precision 0 means nothing is known; it arises from transducing a series
/// of precision 1.
#[derive(Clone)]
pub struct TruncSeries<F> {
    terms: BTreeMap<Word, F>,
    precision: usize,
}

impl<F: Field> TruncSeries<F> {
    pub const EXACT: usize = usize::MAX;

    /// Precision used when an exact polynomial has to be inverted.
    pub const DEFAULT_PRECISION: usize = 16;

    pub fn zero() -> Self {
        Self::exact(FreeElem::zero())
    }

    pub fn one() -> Self {
        Self::exact(FreeElem::one())
    }

    pub fn constant(c: F) -> Self {
        Self::exact(FreeElem::constant(c))
    }

    pub fn letter(i: u32) -> Self {
        Self::exact(FreeElem::letter(i))
    }

    pub fn exact(p: FreeElem<F>) -> Self {
        Self::from_free(&p, Self::EXACT)
    }

    pub fn from_free(p: &FreeElem<F>, precision: usize) -> Self {
        TruncSeries {
            terms: p
                .terms()
                .filter(|(w, _)| w.len() < precision)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            precision,
        }
    }

    /// Expands a rational series over the letters `0..alphabet`.
    pub fn from_linrep(r: &LinRep<F>, precision: usize, alphabet: u32) -> Self {
        TruncSeries {
            terms: r.coefficients(precision, alphabet),
            precision,
        }
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision == Self::EXACT
    }

    /// Drops everything from length `precision` on.
    pub fn truncate(&self, precision: usize) -> Self {
        let precision = precision.min(self.precision);
        TruncSeries {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() < precision)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            precision,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    /// The coefficient of `w`, or `None` if it lies beyond the precision.
    pub fn coeff(&self, w: &Word) -> Option<F> {
        (w.len() < self.precision).then(|| self.terms.get(w).cloned().unwrap_or_else(F::zero))
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn tau(&self) -> F {
        self.terms
            .get(&Word::empty())
            .cloned()
            .unwrap_or_else(F::zero)
    }

    fn add_into(terms: &mut BTreeMap<Word, F>, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match terms.remove(&w) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    terms.insert(w, s);
                }
            }
            None => {
                terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        let mut out = self.truncate(precision);
        for (w, c) in other.terms.iter().filter(|(w, _)| w.len() < precision) {
            Self::add_into(&mut out.terms, w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        TruncSeries {
            terms: if c.is_zero() {
                BTreeMap::new()
            } else {
                self.terms
                    .iter()
                    .map(|(w, a)| (w.clone(), a.clone() * c.clone()))
                    .collect()
            },
            precision: self.precision,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        let mut terms = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.len() + v.len() < precision {
                    Self::add_into(&mut terms, u.concat(v), a.clone() * b.clone());
                }
            }
        }
        TruncSeries { terms, precision }
    }

    /// The inverse at the same precision (or [`Self::DEFAULT_PRECISION`]
    /// for an exact non-constant input).
    ///
    /// With `c = τ(a)` and `P = 1 - c⁻¹a`, the inverse `b = c⁻¹ Σ P^k`
    /// satisfies `b(w) = c⁻¹ δ_{w,ε} + Σ_{vu=w, u≠ε} b(v) P(u)`, which is
    /// filled in shortest words first.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let c = self.tau();
        let cinv = c.inverse().ok_or(SeriesError::NotInvertible)?;
        if self.terms.len() == 1 {
            return Ok(Self::constant(cinv).truncate(self.precision));
        }
        let precision = if self.is_exact() {
            Self::DEFAULT_PRECISION
        } else {
            self.precision
        };
        let p: Vec<(Word, F)> = self
            .terms
            .iter()
            .filter(|(w, _)| !w.is_empty())
            .map(|(w, a)| (w.clone(), -(a.clone() * cinv.clone())))
            .collect();
        let mut pending = BTreeMap::new();
        pending.insert(Word::empty(), cinv);
        let mut terms = BTreeMap::new();
        while let Some((v, bv)) = pending.pop_first() {
            for (u, pu) in &p {
                if v.len() + u.len() < precision {
                    Self::add_into(&mut pending, v.concat(u), bv.clone() * pu.clone());
                }
            }
            terms.insert(v, bv);
        }
        Ok(TruncSeries { terms, precision })
    }

    /// The transduction `δ_i`; the precision drops by one.
    pub fn delta(&self, i: u32) -> Self {
        TruncSeries {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.last() == Some(i))
                .map(|(w, c)| (w.prefix(w.len() - 1), c.clone()))
                .collect(),
            precision: if self.is_exact() {
                Self::EXACT
            } else {
                self.precision.saturating_sub(1)
            },
        }
    }

    /// Shortest known word length with nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next().map(Word::len)
    }

    pub fn leading_word(&self) -> Option<Word> {
        self.terms.keys().next().cloned()
    }
}

impl<F: Field> PartialEq for TruncSeries<F> {
    /// Agreement on the words known to both sides.
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl<F: Field> fmt::Display for TruncSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = FreeElem::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c.clone())));
        write!(f, "{p}")?;
        if !self.is_exact() {
            write!(f, " + O({})", self.precision)?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for TruncSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    type T = TruncSeries<Q>;

    fn poly(terms: &[(&[u32], i64)], n: usize) -> T {
        let p = FreeElem::from_terms(
            terms
                .iter()
                .map(|(w, c)| (Word(w.to_vec()), Q::from_int(*c))),
        );
        T::from_free(&p, n)
    }

    #[test]
    fn geometric_series_at_four() {
        let a = poly(&[(&[], 1), (&[0], -1)], 4);
        let b = a.invert().unwrap();
        assert_eq!(
            b,
            poly(&[(&[], 1), (&[0], 1), (&[0, 0], 1), (&[0, 0, 0], 1)], 4)
        );
        assert_eq!(b.precision(), 4);
    }

    #[test]
    fn transduction_lowers_precision() {
        let a = poly(&[(&[0, 1], 1), (&[1, 1, 1], 1)], 4);
        let d = a.delta(1);
        assert_eq!(d.precision(), 3);
        assert_eq!(d, poly(&[(&[0], 1), (&[1, 1], 1)], 3));
    }

    #[test]
    fn product_at_three() {
        let a = poly(&[(&[], 1), (&[0], 1)], 3);
        let b = poly(&[(&[], 1), (&[1], 1)], 3);
        let p = a.mul(&b);
        assert_eq!(p, poly(&[(&[], 1), (&[0], 1), (&[1], 1), (&[0, 1], 1)], 3));
        assert_eq!(p.precision(), 3);
    }

    #[test]
    fn mixed_precision_takes_minimum() {
        let a = poly(&[(&[0], 1)], 5);
        let b = poly(&[(&[1], 1)], 2);
        assert_eq!(a.mul(&b).precision(), 2);
        assert!(a.mul(&b).is_zero());
        assert_eq!(a.add(&T::one()).precision(), 5);
        assert_eq!(a.coeff(&Word::from([0, 0, 0, 0, 0])), None);
    }

    #[test]
    fn inverse_times_self_is_one() {
        let a = poly(&[(&[], 2), (&[0], 1), (&[1, 0], -3)], 8);
        let b = a.invert().unwrap();
        assert_eq!(a.mul(&b), T::one().truncate(8));
        assert_eq!(b.mul(&a), T::one().truncate(8));
        assert!(poly(&[(&[0], 1)], 8).invert().is_err());
    }
}
