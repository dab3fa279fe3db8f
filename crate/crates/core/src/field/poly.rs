use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{Field, Modular};

/// Exponent vector over `t1, t2, ...`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub(crate) struct Monomial(Vec<u32>);

impl Monomial {
    fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn exp(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    fn div(&self, other: &Self) -> Option<Self> {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.exp(i).checked_sub(other.exp(i))?);
        }
        Some(Monomial::new(out))
    }

    fn with_exp(&self, var: usize, e: u32) -> Self {
        let mut v = self.0.clone();
        if v.len() <= var {
            v.resize(var + 1, 0);
        }
        v[var] = e;
        Monomial::new(v)
    }
}

// Graded lexicographic order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `a mod b` for dense univariate coefficient vectors, lowest degree first.
fn dense_rem<F: Field>(mut a: Vec<F>, b: &[F]) -> Vec<F> {
    let lc_inv = b.last().unwrap().inverse().unwrap();
    while a.len() >= b.len() {
        let f = a.last().unwrap().clone() * lc_inv.clone();
        let shift = a.len() - b.len();
        if !f.is_zero() {
            for (k, bk) in b.iter().enumerate() {
                a[k + shift] = a[k + shift].clone() - f.clone() * bk.clone();
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

fn trim<F: Field>(a: &mut Vec<F>) {
    while a.last().is_some_and(F::is_zero) {
        a.pop();
    }
}

/// Quotient and remainder of dense univariate polynomials.
fn dense_divmod<F: Field>(mut a: Vec<F>, b: &[F]) -> (Vec<F>, Vec<F>) {
    let lc_inv = b.last().unwrap().inverse().unwrap();
    let mut q = vec![F::zero(); a.len().saturating_sub(b.len()) + 1];
    while a.len() >= b.len() {
        let f = a.last().unwrap().clone() * lc_inv.clone();
        let shift = a.len() - b.len();
        for (k, bk) in b.iter().enumerate() {
            a[k + shift] = a[k + shift].clone() - f.clone() * bk.clone();
        }
        q[shift] = f;
        a.pop();
        trim(&mut a);
    }
    trim(&mut q);
    (q, a)
}

/// Sparse polynomial in `t1, t2, ...` over a field.
#[derive(Clone, PartialEq)]
pub struct MPoly<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MPoly<F> {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::default(), c);
        }
        MPoly { terms }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// The indeterminate `t_{var+1}`.
    pub fn var(var: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::default().with_exp(var, 1), F::one());
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.0.is_empty()).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Highest variable index occurring, `None` for constants.
    pub fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.0.len().checked_sub(1))
            .max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn leading_coefficient(&self) -> Option<&F> {
        self.terms.iter().next_back().map(|(_, c)| c)
    }

    fn insert_add(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly {
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
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn coefficients(&self) -> impl Iterator<Item = F> + '_ {
        self.terms.values().cloned()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let (Some(a), Some(b)) = (self.dense(), other.dense()) {
            let mut out = vec![F::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    out[i + j] = out[i + j].clone() + x.clone() * y.clone();
                }
            }
            return Self::from_dense(out);
        }
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_add(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m2, c2)| (m.mul(m2), c.clone() * c2.clone()))
                .collect(),
        }
    }

    /// Coefficients in `t1`, lowest degree first, when no other variable
    /// occurs.
    fn dense(&self) -> Option<Vec<F>> {
        if self.terms.keys().any(|m| m.0.len() > 1) {
            return None;
        }
        let d = self.terms.keys().map(|m| m.exp(0)).max().unwrap_or(0) as usize;
        let mut out = vec![F::zero(); d + 1];
        for (m, c) in &self.terms {
            out[m.exp(0) as usize] = c.clone();
        }
        trim(&mut out);
        Some(out)
    }

    fn from_dense(coeffs: Vec<F>) -> Self {
        MPoly {
            terms: coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (Monomial::new(vec![e as u32]), c))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// Exact quotient `self / other`, `None` when `other` does not divide.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "polynomial division by zero");
        if let (Some(a), Some(b)) = (self.dense(), other.dense()) {
            let (q, r) = dense_divmod(a, &b);
            return r.is_empty().then(|| Self::from_dense(q));
        }
        let (lm, lc) = other.terms.iter().next_back().unwrap();
        let lc_inv = lc.inverse().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.terms.iter().next_back() {
            let qm = m.div(lm)?;
            let qc = c.clone() * lc_inv.clone();
            rem = rem.sub(&other.mul_term(&qm, &qc));
            quot.insert_add(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to `var`, lowest degree first.
    fn coeffs_in(&self, var: usize) -> Vec<Self> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            out[e].insert_add(m.with_exp(var, 0), c.clone());
        }
        out
    }

    fn from_coeffs_in(var: usize, coeffs: &[Self]) -> Self {
        let mut out = Self::zero();
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                out.insert_add(m.with_exp(var, e as u32), c.clone());
            }
        }
        out
    }

    fn content_in(&self, var: usize) -> Self {
        self.coeffs_in(var)
            .iter()
            .filter(|c| !c.is_zero())
            .fold(Self::zero(), |g, c| g.gcd(c))
    }

    fn primitive_part_in(&self, var: usize) -> Self {
        let c = self.content_in(var);
        self.div_exact(&c).expect("content divides").monic()
    }

    fn pseudo_remainder(&self, other: &Self, var: usize) -> Self {
        let b = other.coeffs_in(var);
        let db = b.len() - 1;
        let lc = b[db].clone();
        let mut r = self.coeffs_in(var);
        let mut e = (r.len() as i64) - (db as i64);
        loop {
            while r.len() > 1 && r.last().unwrap().is_zero() {
                r.pop();
            }
            if r.len() - 1 < db || (r.len() == 1 && r[0].is_zero()) {
                break;
            }
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            let shift = dr - db;
            for c in r.iter_mut() {
                *c = c.mul(&lc);
            }
            for (k, bk) in b.iter().enumerate() {
                r[k + shift] = r[k + shift].sub(&bk.mul(&lr));
            }
            r.pop();
            if r.is_empty() {
                r.push(Self::zero());
            }
            e -= 1;
        }
        let mut out = Self::from_coeffs_in(var, &r);
        for _ in 0..e.max(0) {
            out = out.mul(&lc);
        }
        out
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if let (Some(mut a), Some(mut b)) = (self.dense(), other.dense()) {
            if let Some(g) = F::dense_gcd(&a, &b) {
                return Self::from_dense(g);
            }
            while !b.is_empty() {
                let r = dense_rem(a, &b);
                a = b;
                b = r;
            }
            return Self::from_dense(a).monic();
        }
        let var = match (self.max_var(), other.max_var()) {
            (None, None) => return Self::one(),
            (a, b) => a.max(b).unwrap(),
        };
        if self.degree_in(var) == 0 {
            return self.gcd(&other.content_in(var));
        }
        if other.degree_in(var) == 0 {
            return other.gcd(&self.content_in(var));
        }
        let c = self.content_in(var).gcd(&other.content_in(var));
        let mut p = self.primitive_part_in(var);
        let mut q = other.primitive_part_in(var);
        if p.degree_in(var) < q.degree_in(var) {
            std::mem::swap(&mut p, &mut q);
        }
        loop {
            let r = p.pseudo_remainder(&q, var);
            if r.is_zero() {
                break;
            }
            if r.degree_in(var) == 0 {
                q = Self::one();
                break;
            }
            p = q;
            q = r.primitive_part_in(var);
        }
        c.mul(&q).monic()
    }

    /// Image in [`Modular`] at the point `t_i ↦ 1009 + 7919·i`.
    pub(crate) fn modular_image(&self) -> Option<Modular> {
        let mut acc = Modular::zero();
        for (m, c) in &self.terms {
            let mut t = c.modular_image()?;
            for (i, &e) in m.0.iter().enumerate() {
                let x = Modular::new(1009 + 7919 * i as i64);
                for _ in 0..e {
                    t = t * x;
                }
            }
            acc = acc + t;
        }
        Some(acc)
    }

    pub fn evaluate(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t * point[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }
}

impl<F: Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, body) = split_sign(&c.to_string());
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let body = if needs_parens(&body) {
                format!("({body})")
            } else {
                body
            };
            let mut first = true;
            if m.0.is_empty() || body != "1" {
                write!(f, "{body}")?;
                first = false;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "t{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Splits a printed scalar into sign and magnitude when the sign applies to
/// the whole value.
pub(crate) fn split_sign(s: &str) -> (bool, String) {
    match s.strip_prefix('-') {
        Some(rest) if !rest.contains(['+', '-', ' ']) => (true, rest.to_string()),
        _ => (false, s.to_string()),
    }
}

pub(crate) fn needs_parens(s: &str) -> bool {
    if is_wrapped(s) {
        return false;
    }
    s.contains(['+', ' ', '/']) || s[1..].contains('-')
}

fn is_wrapped(s: &str) -> bool {
    if !s.starts_with('(') {
        return false;
    }
    let mut depth = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i == s.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

impl<F: Field> fmt::Debug for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn t(i: usize) -> MPoly<Q> {
        MPoly::var(i)
    }

    fn c(n: i64) -> MPoly<Q> {
        MPoly::constant(Q::from_int(n))
    }

    #[test]
    fn univariate_gcd() {
        // (t+1)(t-2) and (t+1)(t+3)
        let a = t(0).add(&c(1)).mul(&t(0).sub(&c(2)));
        let b = t(0).add(&c(1)).mul(&t(0).add(&c(3)));
        assert_eq!(a.gcd(&b), t(0).add(&c(1)));
    }

    #[test]
    fn bivariate_gcd() {
        let common = t(0).mul(&t(1)).add(&c(1));
        let a = common.mul(&t(0).add(&t(1)));
        let b = common.mul(&t(1).sub(&c(5))).mul(&t(0));
        assert_eq!(a.gcd(&b), common.monic());
    }

    #[test]
    fn coprime_gcd_is_one() {
        let a = t(0).mul(&t(0)).add(&c(1));
        let b = t(1).add(&c(2));
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn exact_division() {
        let a = t(0).add(&t(1));
        let b = t(0).sub(&t(1));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.add(&c(1)).div_exact(&a).is_none());
    }

    #[test]
    fn display() {
        let p = t(0).mul(&t(0)).scale(&Q::from_int(3)).sub(&t(1)).add(&c(1));
        assert_eq!(p.to_string(), "3*t1^2 - t2 + 1");
    }
}
