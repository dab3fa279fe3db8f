use std::fmt;

use crate::field::Field;
use crate::freealg::FreeElem;
use crate::ratseries::{LinRep, TruncSeries};
use crate::word::{LetterKind, Word};

/// A coefficient algebra `R ⊆ k<<X>>` closed under the augmentation `τ`
/// and the transductions `δ_i`.
///
/// Implemented by polynomials ([`FreeElem`]), rational series
/// ([`LinRep`]) and truncated power series ([`TruncSeries`]). The last one
/// is approximate: its zero test only sees the known coefficients, and
/// [`Coefficient::precision`] says how far that is.
pub trait Coefficient: Clone + fmt::Debug {
    type Scalar: Field;

    fn zero() -> Self;
    fn one() -> Self;
    fn scalar(c: Self::Scalar) -> Self;
    fn letter(i: u32) -> Self;

    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Self::Scalar) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn is_zero(&self) -> bool;

    fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// The constant term.
    fn tau(&self) -> Self::Scalar;

    /// `w ↦ r(w·x_i)`.
    fn delta(&self, i: u32) -> Self;

    /// Length of the shortest word in the support; `None` for zero.
    fn order(&self) -> Option<usize>;

    /// The length-lex smallest word in the support.
    fn leading_word(&self) -> Option<Word>;

    /// Inverse inside `R`, if it exists there.
    fn invert(&self) -> Option<Self>;

    /// Largest letter index that may occur.
    fn max_letter(&self) -> Option<u32>;

    /// `None` for exact backends; otherwise the word length up to which
    /// answers are reliable.
    fn precision(&self) -> Option<usize> {
        None
    }

    /// Text that the command-line parser reads back as the same element
    /// (for exact backends).
    fn render(&self) -> String;
}

impl<F: Field> Coefficient for FreeElem<F> {
    type Scalar = F;

    fn zero() -> Self {
        FreeElem::zero()
    }
    fn one() -> Self {
        FreeElem::one()
    }
    fn scalar(c: F) -> Self {
        FreeElem::constant(c)
    }
    fn letter(i: u32) -> Self {
        FreeElem::letter(i)
    }
    fn add(&self, other: &Self) -> Self {
        FreeElem::add(self, other)
    }
    fn neg(&self) -> Self {
        FreeElem::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        FreeElem::mul(self, other)
    }
    fn scale(&self, c: &F) -> Self {
        FreeElem::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        FreeElem::is_zero(self)
    }
    fn tau(&self) -> F {
        FreeElem::tau(self)
    }
    fn delta(&self, i: u32) -> Self {
        FreeElem::delta(self, i)
    }
    fn order(&self) -> Option<usize> {
        self.stats().order
    }
    fn leading_word(&self) -> Option<Word> {
        FreeElem::leading_word(self).cloned()
    }
    /// Only nonzero constants are units of the free algebra.
    fn invert(&self) -> Option<Self> {
        match self.stats() {
            s if s.support == 1 && s.degree == Some(0) => {
                Some(FreeElem::constant(s.constant.inverse()?))
            }
            _ => None,
        }
    }
    fn max_letter(&self) -> Option<u32> {
        FreeElem::max_letter(self)
    }
    fn render(&self) -> String {
        FreeElem::render(self, LetterKind::X)
    }
}

impl<F: Field> Coefficient for LinRep<F> {
    type Scalar = F;

    fn zero() -> Self {
        LinRep::zero()
    }
    fn one() -> Self {
        LinRep::one()
    }
    fn scalar(c: F) -> Self {
        LinRep::constant(c)
    }
    fn letter(i: u32) -> Self {
        LinRep::letter(i)
    }
    fn add(&self, other: &Self) -> Self {
        LinRep::add(self, other)
    }
    fn neg(&self) -> Self {
        LinRep::neg(self)
    }
    fn sub(&self, other: &Self) -> Self {
        LinRep::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        LinRep::mul(self, other)
    }
    fn scale(&self, c: &F) -> Self {
        LinRep::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        LinRep::is_zero(self)
    }
    fn equals(&self, other: &Self) -> bool {
        LinRep::equals(self, other)
    }
    fn tau(&self) -> F {
        LinRep::tau(self)
    }
    fn delta(&self, i: u32) -> Self {
        self.transduce(i)
    }
    fn order(&self) -> Option<usize> {
        LinRep::order(self)
    }
    fn leading_word(&self) -> Option<Word> {
        LinRep::leading_word(self)
    }
    fn invert(&self) -> Option<Self> {
        LinRep::invert(self).ok()
    }
    fn max_letter(&self) -> Option<u32> {
        (self.letters() as u32).checked_sub(1)
    }
    /// Polynomials print exactly; other series print their first
    /// coefficients followed by `+ ...`.
    fn render(&self) -> String {
        self.to_string()
    }
}

impl<F: Field> Coefficient for TruncSeries<F> {
    type Scalar = F;

    fn zero() -> Self {
        TruncSeries::zero()
    }
    fn one() -> Self {
        TruncSeries::one()
    }
    fn scalar(c: F) -> Self {
        TruncSeries::constant(c)
    }
    fn letter(i: u32) -> Self {
        TruncSeries::letter(i)
    }
    fn add(&self, other: &Self) -> Self {
        TruncSeries::add(self, other)
    }
    fn neg(&self) -> Self {
        TruncSeries::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        TruncSeries::mul(self, other)
    }
    fn scale(&self, c: &F) -> Self {
        TruncSeries::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        TruncSeries::is_zero(self)
    }
    fn tau(&self) -> F {
        TruncSeries::tau(self)
    }
    fn delta(&self, i: u32) -> Self {
        TruncSeries::delta(self, i)
    }
    fn order(&self) -> Option<usize> {
        TruncSeries::order(self)
    }
    fn leading_word(&self) -> Option<Word> {
        TruncSeries::leading_word(self)
    }
    fn invert(&self) -> Option<Self> {
        TruncSeries::invert(self).ok()
    }
    fn max_letter(&self) -> Option<u32> {
        self.terms().filter_map(|(w, _)| w.max_letter()).max()
    }
    fn precision(&self) -> Option<usize> {
        (!self.is_exact()).then_some(TruncSeries::precision(self))
    }
    fn render(&self) -> String {
        self.to_string()
    }
}
