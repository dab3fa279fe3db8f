//! Leavitt's algebras `U_{1,n}` and `V_{1,n}` in the monoword basis.
//!
//! `U_{1,n}` is generated by `x_1..x_n`, `y_1..y_n` subject to
//! `x_i y_j = δ_ij`; its monowords `y_I x_J` form a basis. `V_{1,n}` adds
//! `Σ y_i x_i = 1`, i.e. divides out the ideal `I_n` generated by
//! `e_n = 1 - Σ y_i x_i`. Letters start at 1 here; see [`to_skew`] for the
//! translation to the origin-0 skew extension.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::Field;
use crate::freealg::{render_sum, FreeElem};
use crate::skewring::SkewElem;
use crate::word::{Monoword, Word};

/// Cap on the degree of intermediate elements in [`v_witness`].
pub const WITNESS_DEGREE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LeavittError {
    #[error("element lies in the ideal generated by e_{0}")]
    InIdeal(u32),
    #[error("element is zero")]
    Zero,
    #[error("letter index {0} is outside 1..={1}")]
    LetterOutOfRange(u32, u32),
    #[error("witness search needs n >= 2, got {0}")]
    TooFewLetters(u32),
    #[error("intermediate degree {0} exceeds the cap")]
    DegreeCap(usize),
    #[error("witness check failed: product is {0}")]
    VerificationFailed(String),
}

/// An element `Σ λ_{I,J} y_I x_J` of `U_{1,n}` (or of `U_∞`).
#[derive(Clone, PartialEq)]
pub struct UElem<F> {
    terms: BTreeMap<Monoword, F>,
}

impl<F: Field> UElem<F> {
    pub fn zero() -> Self {
        UElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monoword(Monoword::one(), F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monoword(Monoword::one(), c)
    }

    pub fn x(i: u32) -> Self {
        Self::monoword(Monoword::new(Word::empty(), Word::letter(i)), F::one())
    }

    pub fn y(i: u32) -> Self {
        Self::monoword(Monoword::new(Word::letter(i), Word::empty()), F::one())
    }

    pub fn x_word(w: Word) -> Self {
        Self::monoword(Monoword::new(Word::empty(), w), F::one())
    }

    pub fn y_word(w: Word) -> Self {
        Self::monoword(Monoword::new(w, Word::empty()), F::one())
    }

    pub fn monoword(m: Monoword, c: F) -> Self {
        Self::from_terms([(m, c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monoword, F)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monoword, c: F) {
        add_into(&mut self.terms, m, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monoword, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monoword) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&Monoword::one()).is_one()
    }

    /// `s(α)`: number of monowords with nonzero coefficient.
    pub fn support(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monoword::degree).max()
    }

    pub fn max_letter(&self) -> Option<u32> {
        self.terms.keys().filter_map(Monoword::max_letter).max()
    }

    /// No `x` letters occur.
    pub fn in_y_algebra(&self) -> bool {
        self.terms.keys().all(|m| m.x.is_empty())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        UElem {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, d)| (m.clone(), d.clone() * c.clone())),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                if let Some(m) = monoword_mul(a, b) {
                    out.add_term(m, c.clone() * d.clone());
                }
            }
        }
        out
    }

    /// Text such as `2*y1 + y1*y2*x2`.
    pub fn render(&self) -> String {
        render_sum(self.terms.iter().map(|(m, c)| (m.to_string(), c)))
    }
}

fn add_into<F: Field>(map: &mut BTreeMap<Monoword, F>, m: Monoword, c: F) {
    if c.is_zero() {
        return;
    }
    match map.remove(&m) {
        Some(old) => {
            let s = old + c;
            if !s.is_zero() {
                map.insert(m, s);
            }
        }
        None => {
            map.insert(m, c);
        }
    }
}

/// `(y_I x_J)(y_K x_L)`: the inner `x_J y_K` cancels letter by letter from
/// the middle outwards and vanishes on the first mismatch.
pub fn monoword_mul(a: &Monoword, b: &Monoword) -> Option<Monoword> {
    let j = a.x.letters();
    let k = b.y.letters();
    let c = j.len().min(k.len());
    if (0..c).any(|p| j[j.len() - 1 - p] != k[p]) {
        return None;
    }
    let y = a.y.concat(&Word(k[c..].to_vec()));
    let x = Word(j[..j.len() - c].to_vec()).concat(&b.x);
    Some(Monoword { y, x })
}

/// `e_n = 1 - Σ_{i=1}^n y_i x_i`.
pub fn e_n<F: Field>(n: u32) -> UElem<F> {
    (1..=n).fold(UElem::one(), |acc, i| {
        acc.sub(&UElem::y(i).mul(&UElem::x(i)))
    })
}

/// Order in which pending monowords are rewritten by [`v_normal_form_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteOrder {
    SmallestFirst,
    LargestFirst,
}

/// An element of `V_{1,n}` in reduced form: no monoword contains `y_n x_n`.
#[derive(Clone, PartialEq)]
pub struct VElem<F> {
    n: u32,
    elem: UElem<F>,
}

impl<F: Field> VElem<F> {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn as_u(&self) -> &UElem<F> {
        &self.elem
    }

    pub fn into_u(self) -> UElem<F> {
        self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.elem.is_one()
    }
}

fn reducible(m: &Monoword, n: u32) -> bool {
    m.y.last() == Some(n) && m.x.first() == Some(n)
}

pub fn v_normal_form<F: Field>(a: &UElem<F>, n: u32) -> VElem<F> {
    v_normal_form_with(a, n, RewriteOrder::SmallestFirst)
}

/// Rewrites `y_n x_n → 1 - Σ_{i<n} y_i x_i` until no monoword contains the
/// factor `y_n x_n`. Every monoword has a single `y`/`x` junction, so the
/// only freedom is which pending monoword is processed next.
pub fn v_normal_form_with<F: Field>(a: &UElem<F>, n: u32, order: RewriteOrder) -> VElem<F> {
    let mut pending = a.terms.clone();
    let mut done = BTreeMap::new();
    loop {
        let next = match order {
            RewriteOrder::SmallestFirst => pending.pop_first(),
            RewriteOrder::LargestFirst => pending.pop_last(),
        };
        let Some((m, c)) = next else { break };
        if !reducible(&m, n) {
            add_into(&mut done, m, c);
            continue;
        }
        let head = m.y.prefix(m.y.len() - 1);
        let tail = m.x.suffix(1);
        add_into(
            &mut pending,
            Monoword {
                y: head.clone(),
                x: tail.clone(),
            },
            c.clone(),
        );
        for i in 1..n {
            add_into(
                &mut pending,
                Monoword {
                    y: head.push(i),
                    x: Word::letter(i).concat(&tail),
                },
                -c.clone(),
            );
        }
    }
    VElem {
        n,
        elem: UElem { terms: done },
    }
}

pub fn v_member<F: Field>(a: &UElem<F>, n: u32) -> bool {
    v_normal_form(a, n).is_zero()
}

/// `β, γ` with `β·a·γ = 1`, plus the computed product.
#[derive(Clone, PartialEq)]
pub struct Certificate<F> {
    pub beta: UElem<F>,
    pub gamma: UElem<F>,
    pub product: UElem<F>,
}

impl<F: Field> Certificate<F> {
    /// Re-multiplies in `V_{1,n}`.
    pub fn check_v(&self, a: &UElem<F>, n: u32) -> bool {
        v_normal_form(&self.beta.mul(a).mul(&self.gamma), n).is_one()
    }

    /// Re-multiplies in `U_∞`.
    pub fn check_u(&self, a: &UElem<F>) -> bool {
        self.beta.mul(a).mul(&self.gamma).is_one()
    }
}

impl<F: Field> fmt::Debug for Certificate<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Certificate")
            .field("beta", &self.beta)
            .field("gamma", &self.gamma)
            .field("product", &self.product)
            .finish()
    }
}

fn check_letters<F: Field>(a: &UElem<F>, n: u32) -> Result<(), LeavittError> {
    for m in a.terms.keys() {
        for &l in m.y.letters().iter().chain(m.x.letters()) {
            if l == 0 || l > n {
                return Err(LeavittError::LetterOutOfRange(l, n));
            }
        }
    }
    Ok(())
}

/// `β, γ` with `β·a·γ ≡ 1` in `V_{1,n}`; `β` is a scalar times an `x`-word
/// and `γ` a `y`-word.
pub fn v_witness<F: Field>(a: &UElem<F>, n: u32) -> Result<Certificate<F>, LeavittError> {
    if n < 2 {
        return Err(LeavittError::TooFewLetters(n));
    }
    check_letters(a, n)?;
    let alpha = v_normal_form(a, n).into_u();
    if alpha.is_zero() {
        return Err(LeavittError::InIdeal(n));
    }
    let (scale, left, right) = reduce_to_one(alpha, n)?;
    let beta = UElem::monoword(Monoword::new(Word::empty(), left), scale);
    let gamma = UElem::y_word(right);
    let product = v_normal_form(&beta.mul(a).mul(&gamma), n).into_u();
    if !product.is_one() {
        return Err(LeavittError::VerificationFailed(product.render()));
    }
    Ok(Certificate {
        beta,
        gamma,
        product,
    })
}

/// For reduced nonzero `α`, returns `(λ, P, K)` with `λ·x_P·α·y_K ≡ 1`.
fn reduce_to_one<F: Field>(mut alpha: UElem<F>, n: u32) -> Result<(F, Word, Word), LeavittError> {
    let mut left = Word::empty();
    let mut right = Word::empty();
    loop {
        let degree = alpha.degree().unwrap_or(0);
        if degree > WITNESS_DEGREE_CAP {
            return Err(LeavittError::DegreeCap(degree));
        }
        if alpha.support() == 1 {
            let (m, c) = alpha.terms.iter().next().expect("support is one");
            let inv = c.inverse().expect("nonzero coefficient");
            return Ok((
                inv,
                m.y.reverse().concat(&left),
                right.concat(&m.x.reverse()),
            ));
        }
        // Push into k<Y>: right multiplication by y_i keeps reduced forms
        // reduced and strictly lowers the x-degree.
        while !alpha.in_y_algebra() {
            let (i, next) = (1..=n)
                .map(|i| (i, v_normal_form(&alpha.mul(&UElem::y(i)), n).into_u()))
                .find(|(_, b)| !b.is_zero())
                .ok_or(LeavittError::InIdeal(n))?;
            alpha = next;
            right = right.push(i);
        }
        // The longest y-word J turns into the constant term of x_{J*}·α.
        let longest = alpha
            .terms
            .keys()
            .max_by(|a, b| a.y.len().cmp(&b.y.len()).then_with(|| b.y.cmp(&a.y)))
            .expect("nonzero")
            .y
            .clone();
        let prefix = longest.reverse();
        alpha = UElem::x_word(prefix.clone()).mul(&alpha);
        left = prefix.concat(&left);
        if alpha.support() == 1 {
            continue;
        }
        // Kill a non-constant x-word with a letter it does not end in; the
        // constant term survives as a y_j term.
        let ends: Vec<u32> = alpha.terms.keys().filter_map(|m| m.x.last()).collect();
        let j = (1..=n)
            .find(|j| ends.iter().any(|e| e != j))
            .expect("n >= 2 and a non-constant term exists");
        alpha = alpha.mul(&UElem::y(j));
        right = right.push(j);
    }
}

/// `β, γ` with `β·a·γ = 1` in `U_∞`, using a letter `m+1` beyond every
/// index in `a` and beyond `n`.
pub fn uinf_witness<F: Field>(a: &UElem<F>, n: u32) -> Result<Certificate<F>, LeavittError> {
    let shortest = a
        .terms
        .keys()
        .map(|m| &m.y)
        .min()
        .ok_or(LeavittError::Zero)?
        .clone();
    let (mono, lambda) = a
        .terms
        .iter()
        .filter(|(m, _)| m.y == shortest)
        .max_by(|(a, _), (b, _)| a.x.len().cmp(&b.x.len()).then_with(|| b.x.cmp(&a.x)))
        .expect("shortest y-word occurs");
    let fresh = a.max_letter().unwrap_or(0).max(n) + 1;
    let beta = UElem::monoword(
        Monoword::new(Word::empty(), Word::letter(fresh).concat(&mono.y.reverse())),
        lambda.inverse().expect("nonzero coefficient"),
    );
    let gamma = UElem::y_word(mono.x.reverse().push(fresh));
    let product = beta.mul(a).mul(&gamma);
    if !product.is_one() {
        return Err(LeavittError::VerificationFailed(product.render()));
    }
    Ok(Certificate {
        beta,
        gamma,
        product,
    })
}

fn shift(w: &Word, up: bool) -> Word {
    Word(
        w.letters()
            .iter()
            .map(|&l| if up { l + 1 } else { l - 1 })
            .collect(),
    )
}

/// `U_{1,n} = k<X><Y; τ, δ>`: moves letter `i` to `i - 1`.
pub fn to_skew<F: Field>(a: &UElem<F>) -> SkewElem<FreeElem<F>> {
    SkewElem::from_terms(a.terms.iter().map(|(m, c)| {
        (
            shift(&m.y, false),
            FreeElem::monomial(shift(&m.x, false), c.clone()),
        )
    }))
}

/// Inverse of [`to_skew`].
pub fn from_skew<F: Field>(s: &SkewElem<FreeElem<F>>) -> UElem<F> {
    UElem::from_terms(s.terms().flat_map(|(w, r)| {
        r.terms()
            .map(|(u, c)| (Monoword::new(shift(w, true), shift(u, true)), c.clone()))
            .collect::<Vec<_>>()
    }))
}

impl<F: Field> fmt::Display for UElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<F: Field> fmt::Debug for UElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UElem({self})")
    }
}

impl<F: Field> fmt::Display for VElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.elem.render())
    }
}

impl<F: Field> fmt::Debug for VElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VElem<{}>({})", self.n, self.elem)
    }
}
