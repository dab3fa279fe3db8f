//! Alphabets, words and monowords.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LetterKind {
    X,
    Y,
}

impl LetterKind {
    pub fn symbol(self) -> char {
        match self {
            LetterKind::X => 'x',
            LetterKind::Y => 'y',
        }
    }
}

/// A finite or dynamically growing alphabet.
///
/// Letters are identified by index. The index origin is part of the
/// alphabet: Leavitt algebras number their letters from 1, the skew
/// extensions from 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    pub kind: LetterKind,
    /// `None` for a dynamic alphabet.
    pub size: Option<u32>,
    pub origin: u32,
    /// Dynamic alphabets: one past the largest index handed out so far.
    next_fresh: u32,
}

impl Alphabet {
    pub fn finite(kind: LetterKind, size: u32, origin: u32) -> Self {
        Alphabet {
            kind,
            size: Some(size),
            origin,
            next_fresh: origin + size,
        }
    }

    pub fn dynamic(kind: LetterKind, origin: u32) -> Self {
        Alphabet {
            kind,
            size: None,
            origin,
            next_fresh: origin,
        }
    }

    pub fn contains(&self, index: u32) -> bool {
        index >= self.origin
            && match self.size {
                Some(n) => index < self.origin + n,
                None => true,
            }
    }

    /// Largest valid index, if finite.
    pub fn last(&self) -> Option<u32> {
        self.size.map(|n| self.origin + n - 1)
    }

    /// Marks `index` as used so that [`Alphabet::fresh`] never returns it.
    pub fn observe(&mut self, index: u32) {
        self.next_fresh = self.next_fresh.max(index + 1);
    }

    /// A letter index never used before. Only dynamic alphabets grow.
    pub fn fresh(&mut self) -> Option<u32> {
        if self.size.is_some() {
            return None;
        }
        let i = self.next_fresh;
        self.next_fresh += 1;
        Some(i)
    }

    /// The letters `0..=n` (origin 0) or `1..=n` (origin 1) of a finite alphabet.
    pub fn letters(&self) -> impl Iterator<Item = u32> {
        let end = self.size.map_or(self.next_fresh, |n| self.origin + n);
        self.origin..end
    }
}

/// A word in the free monoid; the empty word is the identity.
///
/// Words are ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u32) -> Self {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn max_letter(&self) -> Option<u32> {
        self.0.iter().copied().max()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, letter: u32) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    /// `I*`: the letters in reverse order.
    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// The `w` with `other = self · w`, if `self` is a prefix of `other`.
    pub fn left_quotient(&self, other: &Word) -> Option<Word> {
        other
            .0
            .strip_prefix(self.0.as_slice())
            .map(|w| Word(w.to_vec()))
    }

    /// The `w` with `other = w · self`, if `self` is a suffix of `other`.
    pub fn right_quotient(&self, other: &Word) -> Option<Word> {
        other
            .0
            .strip_suffix(self.0.as_slice())
            .map(|w| Word(w.to_vec()))
    }

    pub fn suffix(&self, from: usize) -> Word {
        Word(self.0[from..].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// Renders as a product of letters, e.g. `x0*x1`; the empty word is `1`.
    pub fn render(&self, kind: LetterKind) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        let sym = kind.symbol();
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&format!("{sym}{l}"));
            if run > 1 {
                out.push_str(&format!("^{run}"));
            }
            i += run;
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

impl<const N: usize> From<[u32; N]> for Word {
    fn from(v: [u32; N]) -> Self {
        Word(v.to_vec())
    }
}

/// A basis element `y_I x_J`; `(∅, ∅)` is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug, Serialize, Deserialize)]
pub struct Monoword {
    pub y: Word,
    pub x: Word,
}

impl Monoword {
    pub fn new(y: impl Into<Word>, x: impl Into<Word>) -> Self {
        Monoword {
            y: y.into(),
            x: x.into(),
        }
    }

    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.y.is_empty() && self.x.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.y.len() + self.x.len()
    }

    pub fn max_letter(&self) -> Option<u32> {
        self.y.max_letter().max(self.x.max_letter())
    }
}

impl Ord for Monoword {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.y.cmp(&other.y))
            .then_with(|| self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monoword {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monoword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.y.is_empty(), self.x.is_empty()) {
            (true, true) => write!(f, "1"),
            (false, true) => write!(f, "{}", self.y.render(LetterKind::Y)),
            (true, false) => write!(f, "{}", self.x.render(LetterKind::X)),
            (false, false) => write!(
                f,
                "{}*{}",
                self.y.render(LetterKind::Y),
                self.x.render(LetterKind::X)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concat_reverse_quotient() {
        let a = Word::from([1, 2]);
        let b = Word::from([3]);
        assert_eq!(a.concat(&b), Word::from([1, 2, 3]));
        assert_eq!(Word::from([1, 2, 3]).reverse(), Word::from([3, 2, 1]));
        assert_eq!(Word::from([1]).left_quotient(&a), Some(Word::from([2])));
        assert_eq!(Word::from([2]).left_quotient(&a), None);
        assert_eq!(Word::from([2]).right_quotient(&a), Some(Word::from([1])));
    }

    #[test]
    fn empty_word_is_identity() {
        let a = Word::from([4, 0, 4]);
        assert_eq!(Word::empty().concat(&a), a);
        assert_eq!(a.concat(&Word::empty()), a);
        assert_eq!(Word::empty().render(LetterKind::X), "1");
    }

    #[test]
    fn shortlex_order() {
        let mut v = vec![
            Word::from([1, 0]),
            Word::from([2]),
            Word::empty(),
            Word::from([0, 1]),
            Word::from([0]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Word::empty(),
                Word::from([0]),
                Word::from([2]),
                Word::from([0, 1]),
                Word::from([1, 0]),
            ]
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(Word::from([0, 0, 1]).render(LetterKind::X), "x0^2*x1");
        assert_eq!(Monoword::new([1], [2]).to_string(), "y1*x2");
    }

    #[test]
    fn dynamic_alphabet_never_reuses() {
        let mut a = Alphabet::dynamic(LetterKind::X, 1);
        a.observe(3);
        assert_eq!(a.fresh(), Some(4));
        assert_eq!(a.fresh(), Some(5));
        let mut f = Alphabet::finite(LetterKind::Y, 3, 0);
        assert!(f.contains(2) && !f.contains(3));
        assert_eq!(f.fresh(), None);
        assert_eq!(f.letters().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(Alphabet::finite(LetterKind::X, 2, 1).last(), Some(2));
    }
}
