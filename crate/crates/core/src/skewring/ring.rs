use std::fmt;

use serde::Serialize;

use super::{Coefficient, SkewElem, SkewError};
use crate::word::Word;

/// A yes/no answer, qualified by the precision it was decided at when
/// truncated coefficients were involved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// `None` when decided exactly.
    pub precision: Option<usize>,
}

impl Verdict {
    fn exact(holds: bool) -> Self {
        Verdict {
            holds,
            precision: None,
        }
    }

    fn and(self, other: Verdict) -> Verdict {
        Verdict {
            holds: self.holds && other.holds,
            precision: match (self.precision, other.precision) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.holds)?;
        if let Some(p) = self.precision {
            write!(f, " (up to precision {p})")?;
        }
        Ok(())
    }
}

/// The skew extension over the letters `x_0..x_n`, `y_0..y_n`, with the
/// idempotent `e = 1 - Σ y_i x_i` and the quotient `T = S/SeS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkewRing {
    pub n: u32,
}

/// A witness `m·a·g ≡ 1` in `T`.
#[derive(Debug, Clone)]
pub struct TWitness<C: Coefficient> {
    /// An `X`-word, applied on the left.
    pub m: Word,
    pub g: SkewElem<C>,
}

/// Named hypotheses of a word system `Σ w_i q_i = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    /// `ws` and `qs` have different lengths, or the system is empty.
    Shape,
    /// `Σ w_i q_i ≡ 1` fails.
    SumIsOne,
    /// `q_i w_j ≡ 0` fails for `i ≠ j`.
    Orthogonal { i: usize, j: usize },
    /// `q_i w_i ≢ 0` fails.
    DiagonalNonzero { i: usize },
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Shape => write!(f, "ws and qs must be nonempty and of equal length"),
            Hypothesis::SumIsOne => write!(f, "sum of w_i q_i is not 1"),
            Hypothesis::Orthogonal { i, j } => write!(f, "q_{i} w_{j} is not 0"),
            Hypothesis::DiagonalNonzero { i } => write!(f, "q_{i} w_{i} is 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Letters `ℓ` peeled off on the way to the failing subsystem.
    pub path: Vec<u32>,
    pub hypothesis: Hypothesis,
}

/// One node of the recursion: after peeling `path`, a system of `size`
/// pairs was checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub path: Vec<u32>,
    pub size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct WordSystemReport {
    pub valid: bool,
    pub s: usize,
    pub modulus: u32,
    /// `s mod n`.
    pub residue: usize,
    pub violations: Vec<Violation>,
    pub trace: Vec<TraceStep>,
}

impl SkewRing {
    pub fn new(n: u32) -> Self {
        SkewRing { n }
    }

    pub fn letters(&self) -> impl Iterator<Item = u32> {
        0..=self.n
    }

    /// `e = 1 - Σ_{i=0}^n y_i x_i`.
    pub fn e<C: Coefficient>(&self) -> SkewElem<C> {
        e_upto(self.n)
    }

    /// Membership in `I = SeS`. An element of `R` lies in `I` only if it is
    /// zero; otherwise `a ∈ I` exactly when every `x_i·a ∈ I`, and those
    /// have smaller `Y`-degree.
    pub fn ideal_member<C: Coefficient>(&self, a: &SkewElem<C>) -> Verdict {
        match a.y_degree() {
            None => Verdict {
                holds: true,
                precision: a.precision(),
            },
            Some(0) => Verdict {
                holds: false,
                precision: a.precision(),
            },
            Some(_) => {
                let mut acc = Verdict::exact(true);
                for i in self.letters() {
                    acc = acc.and(self.ideal_member(&a.left_x(i)));
                    if !acc.holds {
                        break;
                    }
                }
                acc
            }
        }
    }

    /// Equality in `T = S/I`.
    pub fn t_equal<C: Coefficient>(&self, a: &SkewElem<C>, b: &SkewElem<C>) -> Verdict {
        self.ideal_member(&a.sub(b))
    }

    /// The word `w = y_{I*}` for the length-lex smallest `x_I` of minimal
    /// length across the inputs. Every `r_j·w` then lies in `R` and one of
    /// them has nonzero constant term.
    pub fn constant_term_word<C: Coefficient>(&self, rs: &[C]) -> Result<Word, SkewError> {
        constant_term_word(rs)
    }

    /// `m` and `g` with `m·a·g ≡ 1` in `T`, verified before returning.
    pub fn t_witness<C: Coefficient>(&self, a: &SkewElem<C>) -> Result<TWitness<C>, SkewError> {
        if self.ideal_member(a).holds {
            return Err(SkewError::InIdeal);
        }
        let mut cur = a.clone();
        let mut applied = Vec::new();
        while cur.y_degree().unwrap_or(0) > 0 {
            let (i, next) = self
                .letters()
                .map(|i| (i, cur.left_x(i)))
                .find(|(_, b)| !self.ideal_member(b).holds)
                .ok_or(SkewError::InIdeal)?;
            applied.push(i);
            cur = next;
        }
        let m = Word(applied).reverse();
        let r = cur.as_coeff().expect("Y-degree zero");
        let g = right_inverse_in_s(&r)?;
        let check = a.left_x_word(&m).mul(&g);
        if !self.t_equal(&check, &SkewElem::one()).holds {
            return Err(SkewError::VerificationFailed(check.render()));
        }
        Ok(TWitness { m, g })
    }

    /// Checks a system `Σ w_i q_i = 1` with `q_i w_j = δ_ij`-type conditions
    /// in `T`, then splits by first letter and recurses, re-checking the
    /// hypotheses at each level.
    pub fn verify_word_system<C: Coefficient>(
        &self,
        ws: &[Word],
        qs: &[SkewElem<C>],
    ) -> WordSystemReport {
        let mut violations = Vec::new();
        let mut trace = Vec::new();
        self.check_system(ws, qs, &mut Vec::new(), &mut violations, &mut trace);
        let s = ws.len();
        let modulus = self.n.max(1);
        WordSystemReport {
            valid: violations.is_empty(),
            s,
            modulus,
            residue: s % modulus as usize,
            violations,
            trace,
        }
    }

    fn check_system<C: Coefficient>(
        &self,
        ws: &[Word],
        qs: &[SkewElem<C>],
        path: &mut Vec<u32>,
        violations: &mut Vec<Violation>,
        trace: &mut Vec<TraceStep>,
    ) {
        let before = violations.len();
        let mut fail = |h: Hypothesis| {
            violations.push(Violation {
                path: path.clone(),
                hypothesis: h,
            })
        };
        if ws.is_empty() || ws.len() != qs.len() {
            fail(Hypothesis::Shape);
            return;
        }
        let sum = ws.iter().zip(qs).fold(SkewElem::zero(), |acc, (w, q)| {
            acc.add(&SkewElem::y_word(w.clone()).mul(q))
        });
        if !self.t_equal(&sum, &SkewElem::one()).holds {
            fail(Hypothesis::SumIsOne);
        }
        for (i, q) in qs.iter().enumerate() {
            for (j, w) in ws.iter().enumerate() {
                let zero = self
                    .ideal_member(&q.mul(&SkewElem::y_word(w.clone())))
                    .holds;
                if i != j && !zero {
                    fail(Hypothesis::Orthogonal { i, j });
                }
                if i == j && zero {
                    fail(Hypothesis::DiagonalNonzero { i });
                }
            }
        }
        trace.push(TraceStep {
            path: path.clone(),
            size: ws.len(),
        });
        if violations.len() > before || ws.len() == 1 {
            return;
        }
        for l in self.letters() {
            let (sub_ws, sub_qs): (Vec<Word>, Vec<SkewElem<C>>) = ws
                .iter()
                .zip(qs)
                .filter(|(w, _)| w.first() == Some(l))
                .map(|(w, q)| (w.suffix(1), q.mul(&SkewElem::y(l))))
                .unzip();
            path.push(l);
            self.check_system(&sub_ws, &sub_qs, path, violations, trace);
            path.pop();
        }
    }

    /// The structural identities around `e`, each with its outcome:
    /// `x_i y_j = δ_ij`, `e² = e`, `e y_j = 0`, `x_j e = 0` and
    /// `e + Σ y_i x_i = 1`.
    pub fn ideal_tag_checks<C: Coefficient>(&self) -> Vec<(String, bool)> {
        let e: SkewElem<C> = self.e();
        let mut out = Vec::new();
        for i in self.letters() {
            for j in self.letters() {
                let p = SkewElem::<C>::x(i).mul(&SkewElem::y(j));
                let expect = if i == j {
                    SkewElem::one()
                } else {
                    SkewElem::zero()
                };
                out.push((
                    format!("x{i}*y{j} = {}", u8::from(i == j)),
                    p.equals(&expect),
                ));
            }
        }
        out.push(("e*e = e".into(), e.mul(&e).equals(&e)));
        for j in self.letters() {
            out.push((format!("e*y{j} = 0"), e.mul(&SkewElem::y(j)).is_zero()));
            out.push((format!("x{j}*e = 0"), SkewElem::x(j).mul(&e).is_zero()));
        }
        let sum = self.letters().fold(e.clone(), |acc, i| {
            acc.add(&SkewElem::y(i).mul(&SkewElem::x(i)))
        });
        out.push(("e + sum y_i*x_i = 1".into(), sum.equals(&SkewElem::one())));
        out
    }
}

/// `1 - Σ_{i=0}^n y_i x_i`.
pub fn e_upto<C: Coefficient>(n: u32) -> SkewElem<C> {
    (0..=n).fold(SkewElem::one(), |acc, i| {
        acc.sub(&SkewElem::y(i).mul(&SkewElem::x(i)))
    })
}

pub fn constant_term_word<C: Coefficient>(rs: &[C]) -> Result<Word, SkewError> {
    if rs.is_empty() {
        return Err(SkewError::EmptyInput);
    }
    let mut best: Option<Word> = None;
    for (k, r) in rs.iter().enumerate() {
        let w = r.leading_word().ok_or(SkewError::ZeroInput(k))?;
        if best.as_ref().map_or(true, |b| w < *b) {
            best = Some(w);
        }
    }
    Ok(best.unwrap().reverse())
}

/// `g = y_w·p⁻¹` with `r·g = 1` in `S`, for nonzero `r ∈ R`.
fn right_inverse_in_s<C: Coefficient>(r: &C) -> Result<SkewElem<C>, SkewError> {
    let w = constant_term_word(std::slice::from_ref(r))?;
    let p = SkewElem::coeff(r.clone())
        .mul(&SkewElem::y_word(w.clone()))
        .as_coeff()
        .expect("r·w lies in R");
    let pinv = p.invert().ok_or(SkewError::NotInvertible(p.render()))?;
    Ok(SkewElem::term(w, pinv))
}

/// Witness in the union `S_∞` of the extensions: with `N` the largest
/// letter in use and `e_N = 1 - Σ_{i≤N} y_i x_i`, finds an `X`-word `m`
/// and `γ` with `e_N·m·a·γ = e_N`; then `(x_{N+1} e_N m)·a·(γ y_{N+1}) = 1`
/// holds exactly in `S`.
pub fn sinf_witness<C: Coefficient>(
    a: &SkewElem<C>,
) -> Result<(SkewElem<C>, SkewElem<C>), SkewError> {
    if a.is_zero() {
        return Err(SkewError::ZeroInput(0));
    }
    let n = a.max_letter().unwrap_or(0);
    let mut cur = a.clone();
    let mut applied = Vec::new();
    // e kills every term with a Y-prefix, so e·b = e·b_∅
    while cur.coefficient(&Word::empty()).is_none() {
        let (i, next) = (0..=n)
            .map(|i| (i, cur.left_x(i)))
            .find(|(_, b)| !b.is_zero())
            .expect("a nonzero element has a nonzero x_i-multiple");
        applied.push(i);
        cur = next;
    }
    let m = Word(applied).reverse();
    let r = cur.coefficient(&Word::empty()).unwrap().clone();
    let g = right_inverse_in_s(&r)?;
    let fresh = n + 1;
    let beta = SkewElem::x(fresh)
        .mul(&e_upto(n))
        .mul(&SkewElem::x_word(&m));
    let gamma = g.mul(&SkewElem::y(fresh));
    let check = beta.mul(a).mul(&gamma);
    if !check.equals(&SkewElem::one()) {
        return Err(SkewError::VerificationFailed(check.render()));
    }
    Ok((beta, gamma))
}
