use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SeriesError;
use crate::field::{Field, FieldError, Modular};
use crate::freealg::FreeElem;
use crate::linalg::{dot, EchelonBasis, Matrix};
use crate::word::Word;

/// A rational series given by a linear representation: the coefficient of
/// `w` is `λ·μ(w)·γ`. Letters past `mu.len()` act as zero matrices, so the
/// alphabet grows as needed.
#[derive(Clone)]
pub struct LinRep<F> {
    lambda: Vec<F>,
    mu: Vec<Matrix<F>>,
    gamma: Vec<F>,
}

impl<F: Field> LinRep<F> {
    pub fn new(lambda: Vec<F>, mu: Vec<Matrix<F>>, gamma: Vec<F>) -> Result<Self, SeriesError> {
        let d = lambda.len();
        if gamma.len() != d {
            return Err(SeriesError::Malformed(format!(
                "lambda has length {d}, gamma has length {}",
                gamma.len()
            )));
        }
        if let Some((i, m)) = mu
            .iter()
            .enumerate()
            .find(|(_, m)| m.rows() != d || m.cols() != d)
        {
            return Err(SeriesError::Malformed(format!(
                "mu({i}) is {}x{}, expected {d}x{d}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(LinRep { lambda, mu, gamma })
    }

    pub fn zero() -> Self {
        LinRep {
            lambda: Vec::new(),
            mu: Vec::new(),
            gamma: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinRep {
            lambda: vec![F::one()],
            mu: Vec::new(),
            gamma: vec![c],
        }
    }

    pub fn letter(i: u32) -> Self {
        Self::monomial(&Word::letter(i), F::one())
    }

    /// `c·w` as a path automaton of dimension `|w| + 1`.
    pub fn monomial(w: &Word, c: F) -> Self {
        Self::from_free(&FreeElem::monomial(w.clone(), c))
    }

    /// A polynomial as a prefix-tree automaton, then reduced.
    pub fn from_free(p: &FreeElem<F>) -> Self {
        let mut states: BTreeMap<Word, usize> = BTreeMap::new();
        states.insert(Word::empty(), 0);
        for (w, _) in p.terms() {
            for k in 1..=w.len() {
                let next = states.len();
                states.entry(w.prefix(k)).or_insert(next);
            }
        }
        let d = states.len();
        let letters = p.max_letter().map_or(0, |m| m as usize + 1);
        let mut mu = vec![Matrix::zeros(d, d); letters];
        for (w, &s) in &states {
            if let Some(l) = w.last() {
                let parent = states[&w.prefix(w.len() - 1)];
                mu[l as usize].set(parent, s, F::one());
            }
        }
        let mut lambda = vec![F::zero(); d];
        lambda[0] = F::one();
        let mut gamma = vec![F::zero(); d];
        for (w, c) in p.terms() {
            gamma[states[w]] = c.clone();
        }
        LinRep { lambda, mu, gamma }.reduce()
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    /// Number of letters with a stored matrix.
    pub fn letters(&self) -> usize {
        self.mu.len()
    }

    pub fn lambda(&self) -> &[F] {
        &self.lambda
    }

    pub fn gamma(&self) -> &[F] {
        &self.gamma
    }

    pub fn mu(&self, i: u32) -> Option<&Matrix<F>> {
        self.mu.get(i as usize)
    }

    fn mu_or_zero(&self, i: usize) -> Matrix<F> {
        self.mu
            .get(i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(), self.dim()))
    }

    /// `λ·μ(w)` as a row vector, `None` when a letter has no matrix.
    fn state_after(&self, w: &Word) -> Option<Vec<F>> {
        let mut v = self.lambda.clone();
        for &l in w.letters() {
            v = self.mu.get(l as usize)?.left_apply(&v);
        }
        Some(v)
    }

    pub fn coeff(&self, w: &Word) -> F {
        match self.state_after(w) {
            Some(v) => dot(&v, &self.gamma),
            None => F::zero(),
        }
    }

    /// All nonzero coefficients of words shorter than `max_len` over the
    /// letters `0..alphabet`.
    pub fn coefficients(&self, max_len: usize, alphabet: u32) -> BTreeMap<Word, F> {
        let mut out = BTreeMap::new();
        if self.dim() == 0 || max_len == 0 {
            return out;
        }
        let mut stack = vec![(Word::empty(), self.lambda.clone())];
        while let Some((w, v)) = stack.pop() {
            if v.iter().all(F::is_zero) {
                continue;
            }
            let c = dot(&v, &self.gamma);
            if !c.is_zero() {
                out.insert(w.clone(), c);
            }
            if w.len() + 1 < max_len {
                for l in 0..alphabet.min(self.letters() as u32) {
                    stack.push((w.push(l), self.mu[l as usize].left_apply(&v)));
                }
            }
        }
        out
    }

    /// The augmentation `τ`: the constant term `λ·γ`.
    pub fn tau(&self) -> F {
        dot(&self.lambda, &self.gamma)
    }

    /// The transduction `δ_i`: `(λ, μ, μ(x_i)γ)`, with coefficient of `w`
    /// equal to the coefficient of `w·x_i`. Not reduced, so its dimension
    /// never exceeds the input's.
    pub fn transduce(&self, i: u32) -> Self {
        match self.mu.get(i as usize) {
            Some(m) => LinRep {
                lambda: self.lambda.clone(),
                mu: self.mu.clone(),
                gamma: m.right_apply(&self.gamma),
            },
            None => Self::zero(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinRep {
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
            gamma: self.gamma.iter().map(|g| g.clone() * c.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_raw(other).reduce()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_raw(&other.neg()).reduce()
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_raw(other).reduce()
    }

    fn add_raw(&self, other: &Self) -> Self {
        let (d1, d2) = (self.dim(), other.dim());
        let letters = self.letters().max(other.letters());
        let mu = (0..letters)
            .map(|i| {
                block(
                    &self.mu_or_zero(i),
                    &Matrix::zeros(d1, d2),
                    &other.mu_or_zero(i),
                )
            })
            .collect();
        LinRep {
            lambda: [self.lambda.clone(), other.lambda.clone()].concat(),
            mu,
            gamma: [self.gamma.clone(), other.gamma.clone()].concat(),
        }
    }

    /// Product automaton: run `self`, then hand over to `other` through
    /// `γ_a·λ_b`.
    fn mul_raw(&self, other: &Self) -> Self {
        let (d1, d2) = (self.dim(), other.dim());
        if d1 == 0 || d2 == 0 {
            return Self::zero();
        }
        let handoff = outer(&self.gamma, &other.lambda);
        let letters = self.letters().max(other.letters());
        let mu = (0..letters)
            .map(|i| {
                let mb = other.mu_or_zero(i);
                block(&self.mu_or_zero(i), &handoff.mul(&mb), &mb)
            })
            .collect();
        let tail = other.tau();
        let gamma = self
            .gamma
            .iter()
            .map(|g| g.clone() * tail.clone())
            .chain(other.gamma.iter().cloned())
            .collect();
        LinRep {
            lambda: [self.lambda.clone(), vec![F::zero(); d2]].concat(),
            mu,
            gamma,
        }
    }

    /// `T* = Σ T^k` for a series with zero constant term.
    pub fn star(&self) -> Result<Self, SeriesError> {
        if !self.tau().is_zero() {
            return Err(SeriesError::Malformed("star of a non-proper series".into()));
        }
        let d = self.dim();
        let mu = self
            .mu
            .iter()
            .map(|m| {
                let row = m.left_apply(&self.lambda);
                let mut out = Matrix::zeros(d + 1, d + 1);
                // feedback: γ λ μ(x)
                let inner = m.add(&outer(&self.gamma, &row));
                for j in 0..d {
                    out.set(0, j + 1, row[j].clone());
                    for i in 0..d {
                        out.set(i + 1, j + 1, inner.get(i, j).clone());
                    }
                }
                out
            })
            .collect();
        let mut lambda = vec![F::zero(); d + 1];
        lambda[0] = F::one();
        let gamma = std::iter::once(F::one())
            .chain(self.gamma.iter().cloned())
            .collect();
        Ok(LinRep { lambda, mu, gamma }.reduce())
    }

    /// The inverse in the power-series ring. With `c = τ(a)` and
    /// `a = c(1 - T)`, the inverse is `c⁻¹·T*`.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let c = self.tau();
        let cinv = c.inverse().ok_or(SeriesError::NotInvertible)?;
        let proper = Self::one().add_raw(&self.scale(&-cinv.clone()));
        Ok(proper.star()?.scale(&cinv))
    }

    fn transpose(&self) -> Self {
        LinRep {
            lambda: self.gamma.clone(),
            mu: self.mu.iter().map(Matrix::transpose).collect(),
            gamma: self.lambda.clone(),
        }
    }

    /// Restricts to the span of the reachable row vectors `λ·μ(w)`, in the
    /// reduced echelon basis of that span.
    fn forward(&self) -> Self {
        if self.modular().is_some_and(|m| m.reachable().len() == self.dim()) {
            let mut out = self.clone();
            out.trim_letters();
            return out;
        }
        let basis = self.reachable();
        if basis.is_empty() {
            return Self::zero();
        }
        let rows = basis.reduced_rows();
        let at_pivots = |v: &[F]| -> Vec<F> { rows.iter().map(|(p, _)| v[*p].clone()).collect() };
        let mu = self
            .mu
            .iter()
            .map(|m| {
                Matrix::from_rows(
                    rows.iter()
                        .map(|(_, r)| at_pivots(&m.left_apply(r)))
                        .collect(),
                )
            })
            .collect();
        let lambda = at_pivots(&self.lambda);
        let gamma = rows.iter().map(|(_, r)| dot(r, &self.gamma)).collect();
        let mut out = LinRep { lambda, mu, gamma };
        out.trim_letters();
        out
    }

    /// The image under [`Field::modular_image`], when every entry has one.
    fn modular(&self) -> Option<LinRep<Modular>> {
        if self.dim() == 0 {
            return None;
        }
        let image = |v: &[F]| v.iter().map(F::modular_image).collect::<Option<Vec<_>>>();
        let mu = self
            .mu
            .iter()
            .map(|m| {
                let rows = m.to_rows().iter().map(|r| image(r)).collect::<Option<_>>()?;
                Some(Matrix::from_rows(rows))
            })
            .collect::<Option<_>>()?;
        Some(LinRep {
            lambda: image(&self.lambda)?,
            mu,
            gamma: image(&self.gamma)?,
        })
    }

    fn reachable(&self) -> EchelonBasis<F> {
        let mut basis = EchelonBasis::new(self.dim());
        if self.dim() == 0 || !basis.insert(self.lambda.clone()) {
            return basis;
        }
        let mut next = 0;
        while next < basis.len() {
            let v = basis.row(next).to_vec();
            for m in &self.mu {
                basis.insert(m.left_apply(&v));
            }
            next += 1;
        }
        basis
    }

    fn trim_letters(&mut self) {
        while self.mu.last().is_some_and(Matrix::is_zero) {
            self.mu.pop();
        }
    }

    /// A minimal representation of the same series.
    pub fn reduce(&self) -> Self {
        let r = self.forward().transpose().forward().transpose();
        if r.gamma.iter().all(F::is_zero) {
            return Self::zero();
        }
        r
    }

    /// Exact zero test: the reachable space is orthogonal to `γ`.
    pub fn is_zero(&self) -> bool {
        if self.modular().is_some_and(|m| !m.is_zero()) {
            return false;
        }
        self.reachable()
            .vectors()
            .iter()
            .all(|v| dot(v, &self.gamma).is_zero())
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.add_raw(&other.neg()).is_zero()
    }

    /// Spans `W_k = span{μ(s)γ : |s| = k}` for `k = 0..=len`.
    fn backward_layers(&self, len: usize) -> Vec<EchelonBasis<F>> {
        let mut layers = Vec::with_capacity(len + 1);
        let mut cur = EchelonBasis::new(self.dim());
        cur.insert(self.gamma.clone());
        for _ in 0..len {
            let mut next = EchelonBasis::new(self.dim());
            for v in cur.vectors() {
                for m in &self.mu {
                    next.insert(m.right_apply(v));
                }
            }
            layers.push(cur);
            cur = next;
        }
        layers.push(cur);
        layers
    }

    /// Length of the shortest word with nonzero coefficient; `None` for the
    /// zero series. Words up to length `2·dim` are searched.
    pub fn order(&self) -> Option<usize> {
        let mut layer = EchelonBasis::new(self.dim());
        if self.dim() == 0 || !layer.insert(self.lambda.clone()) {
            return None;
        }
        for len in 0..=2 * self.dim() {
            if layer
                .vectors()
                .iter()
                .any(|v| !dot(v, &self.gamma).is_zero())
            {
                return Some(len);
            }
            let mut next = EchelonBasis::new(self.dim());
            for v in layer.vectors() {
                for m in &self.mu {
                    next.insert(m.left_apply(v));
                }
            }
            if next.is_empty() {
                return None;
            }
            layer = next;
        }
        None
    }

    /// For a polynomial, a bound `k` such that every word in the support is
    /// shorter than `k`: the first length at which the states `λ·μ(w)`
    /// all vanish. `None` if they survive past the dimension.
    pub fn polynomial_length(&self) -> Option<usize> {
        let mut layer = EchelonBasis::new(self.dim());
        if self.dim() == 0 || !layer.insert(self.lambda.clone()) {
            return Some(0);
        }
        for len in 1..=self.dim() + 1 {
            let mut next = EchelonBasis::new(self.dim());
            for v in layer.vectors() {
                for m in &self.mu {
                    next.insert(m.left_apply(v));
                }
            }
            if next.is_empty() {
                return Some(len);
            }
            layer = next;
        }
        None
    }

    /// The length-lex smallest word with nonzero coefficient.
    pub fn leading_word(&self) -> Option<Word> {
        let len = self.order()?;
        let layers = self.backward_layers(len);
        let mut v = self.lambda.clone();
        let mut w = Vec::with_capacity(len);
        for pos in 0..len {
            let target = &layers[len - pos - 1];
            let (l, next) = self
                .mu
                .iter()
                .enumerate()
                .map(|(l, m)| (l, m.left_apply(&v)))
                .find(|(_, u)| target.vectors().iter().any(|c| !dot(u, c).is_zero()))
                .expect("a word of length `order` has nonzero coefficient");
            w.push(l as u32);
            v = next;
        }
        Some(Word(w))
    }

    pub fn to_doc(&self) -> LinRepDoc {
        let row = |v: &[F]| v.iter().map(ToString::to_string).collect();
        LinRepDoc {
            dimension: self.dim(),
            lambda: row(&self.lambda),
            mu: self
                .mu
                .iter()
                .map(|m| m.to_rows().iter().map(|r| row(r)).collect())
                .collect(),
            gamma: row(&self.gamma),
        }
    }

    pub fn from_doc(
        doc: &LinRepDoc,
        parse: impl Fn(&str) -> Result<F, FieldError>,
    ) -> Result<Self, SeriesError> {
        let bad = |e: FieldError| SeriesError::Malformed(e.to_string());
        let row = |v: &[String]| -> Result<Vec<F>, SeriesError> {
            v.iter().map(|s| parse(s).map_err(bad)).collect()
        };
        if doc.lambda.len() != doc.dimension {
            return Err(SeriesError::Malformed(
                "dimension does not match lambda".into(),
            ));
        }
        let mu = doc
            .mu
            .iter()
            .map(|m| {
                let rows = m.iter().map(|r| row(r)).collect::<Result<Vec<_>, _>>()?;
                if rows.len() != doc.dimension || rows.iter().any(|r| r.len() != doc.dimension) {
                    return Err(SeriesError::Malformed("matrix size mismatch".into()));
                }
                Ok(if doc.dimension == 0 {
                    Matrix::zeros(0, 0)
                } else {
                    Matrix::from_rows(rows)
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(row(&doc.lambda)?, mu, row(&doc.gamma)?)
    }
}

/// `[[a, b], [0, c]]`.
fn block<F: Field>(a: &Matrix<F>, b: &Matrix<F>, c: &Matrix<F>) -> Matrix<F> {
    let (d1, d2) = (a.rows(), c.rows());
    let mut out = Matrix::zeros(d1 + d2, d1 + d2);
    for i in 0..d1 {
        for j in 0..d1 {
            out.set(i, j, a.get(i, j).clone());
        }
        for j in 0..d2 {
            out.set(i, d1 + j, b.get(i, j).clone());
        }
    }
    for i in 0..d2 {
        for j in 0..d2 {
            out.set(d1 + i, d1 + j, c.get(i, j).clone());
        }
    }
    out
}

/// Column vector times row vector.
fn outer<F: Field>(col: &[F], row: &[F]) -> Matrix<F> {
    Matrix::from_rows(
        col.iter()
            .map(|c| row.iter().map(|r| c.clone() * r.clone()).collect())
            .collect(),
    )
}

/// JSON form of a linear representation; scalars are written as text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinRepDoc {
    pub dimension: usize,
    pub lambda: Vec<String>,
    /// One `dimension × dimension` matrix per letter, rows first.
    pub mu: Vec<Vec<Vec<String>>>,
    pub gamma: Vec<String>,
}

impl<F: Field> PartialEq for LinRep<F> {
    /// Series equality, not equality of representations.
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl<F: Field> fmt::Debug for LinRep<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinRep(dim {}, {})", self.dim(), self)
    }
}

/// Shows the coefficients of words shorter than 4, followed by `+ ...` when
/// the series is not a polynomial of that degree.
impl<F: Field> fmt::Display for LinRep<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: usize = 4;
        if let Some(len) = self.polynomial_length() {
            let exact = FreeElem::from_terms(self.coefficients(len, self.letters() as u32));
            return write!(f, "{exact}");
        }
        let coeffs = self.coefficients(SHOWN, self.letters() as u32);
        let head = FreeElem::from_terms(coeffs);
        let tail = LinRep::from_free(&head).neg().add_raw(self);
        write!(f, "{head}")?;
        if !tail.is_zero() {
            write!(f, " + ...")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    type R = LinRep<Q>;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn w<const N: usize>(l: [u32; N]) -> Word {
        Word::from(l)
    }

    fn geometric() -> R {
        R::one().sub(&R::letter(0)).invert().unwrap()
    }

    #[test]
    fn long_polynomials_print_exactly() {
        let p = R::monomial(&w([0, 1, 1, 1, 0]), q(2)).add(&R::letter(1));
        assert_eq!(p.polynomial_length(), Some(6));
        assert_eq!(p.to_string(), "x1 + 2*x0*x1^3*x0");
        assert_eq!(geometric().polynomial_length(), None);
        assert!(geometric().to_string().ends_with(" + ..."));
    }

    #[test]
    fn sum_of_letters() {
        let s = R::letter(0).add(&R::letter(1));
        assert_eq!(s.coeff(&w([0])), q(1));
        assert_eq!(s.coeff(&w([1])), q(1));
        assert_eq!(s.coeff(&w([0, 1])), q(0));
    }

    #[test]
    fn product_is_noncommutative() {
        let p = R::letter(0).mul(&R::letter(1));
        assert_eq!(p.coeff(&w([0, 1])), q(1));
        assert_eq!(p.coeff(&w([1, 0])), q(0));
    }

    #[test]
    fn geometric_series() {
        let g = geometric();
        assert_eq!(g.coeff(&w([0, 0, 0, 0, 0])), q(1));
        assert_eq!(g.coeff(&w([0, 1])), q(0));
        assert_eq!(g.tau(), q(1));
        let back = g.mul(&R::one().sub(&R::letter(0)));
        assert_eq!(back.dim(), 1);
        assert!(back.equals(&R::one()));
    }

    #[test]
    fn inversion_needs_constant_term() {
        let half = R::constant(q(2)).invert().unwrap();
        assert!(half.equals(&R::constant(Q::new(1.into(), 2.into()))));
        assert_eq!(
            R::letter(0).invert().unwrap_err(),
            SeriesError::NotInvertible
        );
    }

    #[test]
    fn transductions() {
        let x0x1 = R::letter(0).mul(&R::letter(1));
        assert!(x0x1.transduce(1).equals(&R::letter(0)));
        assert!(x0x1.transduce(0).is_zero());
        assert!(R::one().transduce(0).is_zero());
    }

    #[test]
    fn tau_values() {
        assert_eq!(R::constant(q(3)).add(&R::letter(0)).tau(), q(3));
        assert_eq!(R::letter(0).mul(&R::letter(1)).tau(), q(0));
    }

    #[test]
    fn redundant_sum_reduces() {
        let x = R::letter(0);
        let raw = x.add_raw(&x);
        assert_eq!(raw.dim(), 4);
        let red = raw.reduce();
        assert_eq!(red.dim(), 2);
        assert!(red.equals(&x.scale(&q(2))));
    }

    #[test]
    fn zero_in_disguise() {
        let x = R::letter(0);
        let z = x
            .add_raw(&R::constant(q(1)))
            .add_raw(&x.neg())
            .add_raw(&R::constant(q(-1)));
        assert!(z.dim() >= 3);
        assert!(z.is_zero());
        assert!(z.equals(&R::zero()));
        assert_eq!(z.reduce().dim(), 0);
    }

    #[test]
    fn orders() {
        let x0 = R::letter(0);
        let a = x0.mul(&R::letter(1)).add(&x0.mul(&x0).mul(&x0));
        assert_eq!(a.order(), Some(2));
        assert_eq!(R::zero().order(), None);
        assert_eq!(geometric().sub(&R::one()).order(), Some(1));
        assert_eq!(a.leading_word(), Some(w([0, 1])));
    }

    #[test]
    fn json_round_trip() {
        let g = geometric();
        let doc = g.to_doc();
        let back = R::from_doc(&doc, crate::field::parse_rational).unwrap();
        assert!(back.equals(&g));
        let text = serde_json::to_string(&doc).unwrap();
        let again: LinRepDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn display_marks_infinite_tail() {
        assert_eq!(R::letter(0).to_string(), "x0");
        assert_eq!(geometric().to_string(), "1 + x0 + x0^2 + x0^3 + ...");
    }
}
