//! The free algebra `k<X>`: finitely supported maps from words to scalars.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;
use crate::word::{LetterKind, Word};

/// An element of `k<X>`. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct FreeElem<F> {
    terms: BTreeMap<Word, F>,
}

/// Summary statistics of a free-algebra element.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeStats<F> {
    /// `None` stands for infinity (the zero element).
    pub order: Option<usize>,
    /// `None` stands for minus infinity.
    pub degree: Option<usize>,
    pub support: usize,
    pub constant: F,
}

impl<F: Field> FreeElem<F> {
    pub fn zero() -> Self {
        FreeElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn letter(i: u32) -> Self {
        Self::monomial(Word::letter(i), F::one())
    }

    pub fn monomial(w: Word, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreeElem { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, F)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    fn add_term(&mut self, w: Word, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(w, s);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> F {
        self.terms.get(w).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Word::empty())
    }

    pub fn max_letter(&self) -> Option<u32> {
        self.terms.keys().filter_map(Word::max_letter).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        FreeElem {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FreeElem {
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    /// Convolution product: the coefficient of `w` is `Σ_{uv=w} a(u) b(v)`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.clone() * b.clone());
            }
        }
        out
    }

    /// The augmentation: the constant term.
    pub fn tau(&self) -> F {
        self.constant_term()
    }

    /// The left transduction `w ↦ a(w·x_i)`.
    pub fn delta(&self, i: u32) -> Self {
        FreeElem {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.last() == Some(i))
                .map(|(w, c)| (w.prefix(w.len() - 1), c.clone()))
                .collect(),
        }
    }

    pub fn stats(&self) -> FreeStats<F> {
        FreeStats {
            order: self.terms.keys().map(Word::len).min(),
            degree: self.terms.keys().map(Word::len).max(),
            support: self.terms.len(),
            constant: self.constant_term(),
        }
    }

    /// The length-lex smallest word in the support.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next()
    }

    /// Renders in `3*x0*x1 + x2^2` style with letters of the given kind.
    pub fn render(&self, kind: LetterKind) -> String {
        render_sum(self.terms.iter().map(|(w, c)| (w.render(kind), c)))
    }
}

/// Joins `(monomial, coefficient)` pairs into `a + b - c` text. A monomial
/// rendered as `1` stands for the scalar slot.
pub(crate) fn render_sum<'a, F: Field>(terms: impl IntoIterator<Item = (String, &'a F)>) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        let text = c.to_string();
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
            _ => (false, text),
        };
        let piece = if mono == "1" {
            body
        } else if body == "1" {
            mono
        } else if body.contains(['+', '-']) {
            format!("({body})*{mono}")
        } else {
            format!("{body}*{mono}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
            out.push_str(&piece);
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&piece);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: Field> fmt::Display for FreeElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(LetterKind::X))
    }
}

impl<F: Field> fmt::Debug for FreeElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeElem({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    type E = FreeElem<Q>;

    fn c(n: i64) -> E {
        E::constant(Q::from_int(n))
    }

    #[test]
    fn letters_concatenate() {
        let p = E::letter(1).mul(&E::letter(2));
        assert_eq!(p, E::monomial(Word::from([1, 2]), Q::from_int(1)));
    }

    #[test]
    fn telescoping_product() {
        let x = E::letter(0);
        let p = c(1).add(&x).mul(&c(1).sub(&x));
        assert_eq!(p.to_string(), "1 - x0^2");
    }

    #[test]
    fn square_expands() {
        let s = E::letter(0).add(&E::letter(1));
        assert_eq!(s.mul(&s).to_string(), "x0^2 + x0*x1 + x1*x0 + x1^2");
    }

    #[test]
    fn stats() {
        let a = E::letter(0).mul(&E::letter(1)).add(&E::letter(0));
        let s = a.stats();
        assert_eq!((s.order, s.degree, s.support), (Some(1), Some(2), 2));
        assert_eq!(s.constant, Q::from_int(0));

        let z = E::zero().stats();
        assert_eq!((z.order, z.degree, z.support), (None, None, 0));

        let x = E::letter(0);
        let b = c(3).add(&x.mul(&x).mul(&x)).stats();
        assert_eq!((b.order, b.degree, b.support), (Some(0), Some(3), 2));
        assert_eq!(b.constant, Q::from_int(3));
    }

    #[test]
    fn transduction_picks_final_letter() {
        let x0x1 = E::letter(0).mul(&E::letter(1));
        assert_eq!(x0x1.delta(1), E::letter(0));
        assert!(x0x1.delta(0).is_zero());
        assert!(E::one().delta(0).is_zero());
    }

    #[test]
    fn rendering_of_coefficients() {
        let a = E::letter(0)
            .scale(&Q::from_int(3))
            .sub(&E::letter(1).scale(&Q::new(1.into(), 2.into())))
            .sub(&c(2));
        assert_eq!(a.to_string(), "-2 + 3*x0 - 1/2*x1");
        assert_eq!(E::zero().to_string(), "0");
    }
}
