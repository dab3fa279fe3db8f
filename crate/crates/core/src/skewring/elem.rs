use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::Coefficient;
use crate::word::{LetterKind, Word};

/// An element `Σ_I y_I·r_I` of the skew extension `S = R<Y; τ, δ>`.
///
/// `S` is free as a right `R`-module on the words in `Y`, so the map from
/// `Y`-words to nonzero coefficients is a canonical form.
#[derive(Clone)]
pub struct SkewElem<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Coefficient> SkewElem<C> {
    pub fn zero() -> Self {
        SkewElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::coeff(C::one())
    }

    pub fn scalar(c: C::Scalar) -> Self {
        Self::coeff(C::scalar(c))
    }

    /// An element of `R` inside `S`.
    pub fn coeff(r: C) -> Self {
        Self::term(Word::empty(), r)
    }

    pub fn x(i: u32) -> Self {
        Self::coeff(C::letter(i))
    }

    pub fn y(i: u32) -> Self {
        Self::y_word(Word::letter(i))
    }

    /// The monomial `y_I`.
    pub fn y_word(w: Word) -> Self {
        Self::term(w, C::one())
    }

    /// The monomial `x_J`, as an element of `R`.
    pub fn x_word(w: &Word) -> Self {
        Self::coeff(
            w.letters()
                .iter()
                .fold(C::one(), |acc, &l| acc.mul(&C::letter(l))),
        )
    }

    /// `y_I·r`.
    pub fn term(w: Word, r: C) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(w, r);
        }
        SkewElem { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut out = Self::zero();
        for (w, r) in terms {
            out.add_term(w, r);
        }
        out
    }

    fn add_term(&mut self, w: Word, r: C) {
        if r.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            Some(old) => {
                let s = old.add(&r);
                if !s.is_zero() {
                    self.terms.insert(w, s);
                }
            }
            None => {
                self.terms.insert(w, r);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&C> {
        self.terms.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in `Y`; `None` for zero.
    pub fn y_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// The coefficient of the empty word, when that is the only term.
    pub fn as_coeff(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    /// Largest letter index in use, over both alphabets.
    pub fn max_letter(&self) -> Option<u32> {
        self.terms
            .iter()
            .filter_map(|(w, r)| w.max_letter().max(r.max_letter()))
            .max()
    }

    /// The smallest precision among truncated coefficients.
    pub fn precision(&self) -> Option<usize> {
        self.terms.values().filter_map(C::precision).min()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, r) in &other.terms {
            out.add_term(w.clone(), r.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SkewElem {
            terms: self
                .terms
                .iter()
                .map(|(w, r)| (w.clone(), r.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C::Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, r)| (w.clone(), r.scale(c))))
    }

    /// Product in `S`. Coefficients move right across `Y`-words by
    /// `r·y_i = y_i·τ(r) + δ_i(r)`; unrolled over `J = (j_1..j_m)` with
    /// `r_0 = r`, `r_{p+1} = δ_{j_{p+1}}(r_p)` this is
    /// `r·y_J = Σ_{p<m} y_{j_{p+1}..j_m}·τ(r_p) + r_m`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i_word, r) in &self.terms {
            for (j_word, s) in &other.terms {
                let mut cur = r.clone();
                let mut survived = true;
                for p in 0..j_word.len() {
                    let t = cur.tau();
                    if !t.is_zero() {
                        out.add_term(i_word.concat(&j_word.suffix(p)), s.scale(&t));
                    }
                    cur = cur.delta(j_word.letters()[p]);
                    if cur.is_zero() {
                        survived = false;
                        break;
                    }
                }
                if survived {
                    out.add_term(i_word.clone(), cur.mul(s));
                }
            }
        }
        out
    }

    /// `x_i·a`, using `x_i·y_j = δ_ij`.
    pub fn left_x(&self, i: u32) -> Self {
        let mut out = Self::zero();
        for (w, r) in &self.terms {
            match w.first() {
                None => out.add_term(Word::empty(), C::letter(i).mul(r)),
                Some(l) if l == i => out.add_term(w.suffix(1), r.clone()),
                Some(_) => {}
            }
        }
        out
    }

    /// `x_m·a` for an `X`-word `m`, applying its last letter first.
    pub fn left_x_word(&self, m: &Word) -> Self {
        m.letters()
            .iter()
            .rev()
            .fold(self.clone(), |acc, &l| acc.left_x(l))
    }

    /// Structural equality in `S`.
    pub fn equals(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    /// Text in the command-line syntax, e.g. `y0*y1*(1 + x0) + x2`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (w, r) in &self.terms {
            let coeff = r.render();
            parts.push(if w.is_empty() {
                coeff
            } else if coeff == "1" {
                w.render(LetterKind::Y)
            } else if coeff.contains(['+', '-', ' ']) {
                format!("{}*({coeff})", w.render(LetterKind::Y))
            } else {
                format!("{}*{coeff}", w.render(LetterKind::Y))
            });
        }
        parts.join(" + ")
    }
}

impl<C: Coefficient> PartialEq for SkewElem<C> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl<C: Coefficient> fmt::Display for SkewElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<C: Coefficient> fmt::Debug for SkewElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewElem({self})")
    }
}
