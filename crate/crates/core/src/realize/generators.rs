use serde::Serialize;

use super::{Entry, EntryMatrix, HomSpec, Kt};
use crate::field::{Field, RatFunc};
use crate::skewring::{e_upto, SkewElem, SkewRing};
use crate::word::Word;

/// How many members of the infinite families (cases 2 and 3) are built.
pub const FAMILY_PREFIX: usize = 4;

/// Where the identities are checked: `T_m = S/I` for `m ≥ 2`, or `T_0`
/// (the union of the extensions, no quotient) for `m = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ambient {
    Quotient(u32),
    Limit,
}

impl Ambient {
    fn equal<F: Field>(&self, a: &Entry<F>, b: &Entry<F>) -> bool {
        match self {
            Ambient::Quotient(m) => SkewRing::new(*m).t_equal(a, b).holds,
            Ambient::Limit => a.equals(b),
        }
    }
}

/// Matrices `A_i`, `B_j` over the ambient ring, inside the corner cut out
/// by `unit`.
#[derive(Clone)]
pub struct GeneratorMatrices<F: Field> {
    pub spec: HomSpec,
    pub case: u8,
    pub size: usize,
    pub ambient: Ambient,
    pub unit: EntryMatrix<F>,
    pub a: Vec<EntryMatrix<F>>,
    pub b: Vec<EntryMatrix<F>>,
    /// `Σ B_i A_i = E` is one of the relations (finite families only).
    pub complete: bool,
    /// Case 1: the words `x'_k` (and `y'_k` is their reverse).
    pub primed: Vec<Word>,
}

fn zero<F: Field>(size: usize) -> EntryMatrix<F> {
    vec![vec![Entry::<F>::zero(); size]; size]
}

fn diag<F: Field>(entries: Vec<Entry<F>>) -> EntryMatrix<F> {
    let size = entries.len();
    let mut m = zero(size);
    for (i, e) in entries.into_iter().enumerate() {
        m[i][i] = e;
    }
    m
}

fn t<F: Field>() -> Kt<F> {
    RatFunc::var(0)
}

fn scalar<F: Field>(c: Kt<F>) -> Entry<F> {
    SkewElem::scalar(c)
}

fn xw<F: Field>(w: &Word) -> Entry<F> {
    SkewElem::x_word(w)
}

fn yw<F: Field>(w: &Word) -> Entry<F> {
    SkewElem::y_word(w.clone())
}

pub(crate) fn mat_mul<F: Field>(a: &EntryMatrix<F>, b: &EntryMatrix<F>) -> EntryMatrix<F> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .filter(|&k| !a[i][k].is_zero() && !b[k][j].is_zero())
                        .fold(Entry::<F>::zero(), |acc, k| acc.add(&a[i][k].mul(&b[k][j])))
                })
                .collect()
        })
        .collect()
}

fn mat_add<F: Field>(a: &EntryMatrix<F>, b: &EntryMatrix<F>) -> EntryMatrix<F> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.add(y)).collect())
        .collect()
}

/// `x'_0 = x_0^h`, then `x_1 x_0^k, …, x_m x_0^k` for `k = h-1, …, 0`.
fn primed_words(m: u32, h: u32) -> Vec<Word> {
    let mut out = vec![Word(vec![0; h as usize])];
    for k in (0..h).rev() {
        for i in 1..=m {
            let mut w = vec![i];
            w.extend(std::iter::repeat(0).take(k as usize));
            out.push(Word(w));
        }
    }
    out
}

/// The matrices for `spec`, following the four constructions.
pub fn build_generators<F: Field>(spec: &HomSpec) -> GeneratorMatrices<F> {
    let (n, m) = (spec.source.modulus() as u32, spec.target.modulus() as u32);
    let l = spec.mult;
    let case = spec.case();
    match case {
        1 => {
            let l = l as usize;
            let h = spec.h().expect("case 1") as u32;
            let primed = primed_words(m, h);
            let xp = |k: usize| xw::<F>(&primed[k]);
            let yp = |k: usize| yw::<F>(&primed[k].reverse());
            let tinv = t::<F>().inverse().expect("t is nonzero");
            let mut a = vec![diag(
                (0..l)
                    .map(|k| if k + 1 < l { scalar(t()) } else { xp(0) })
                    .collect(),
            )];
            let mut b = vec![diag(
                (0..l)
                    .map(|k| {
                        if k + 1 < l {
                            scalar(tinv.clone())
                        } else {
                            yp(0)
                        }
                    })
                    .collect(),
            )];
            for i in 1..=n as usize {
                let mut ai = zero(l);
                let mut bi = zero(l);
                for p in 0..l {
                    ai[p][l - 1] = xp((i - 1) * l + p + 1);
                    bi[l - 1][p] = yp((i - 1) * l + p + 1);
                }
                a.push(ai);
                b.push(bi);
            }
            GeneratorMatrices {
                spec: *spec,
                case,
                size: l,
                ambient: Ambient::Quotient(m),
                unit: diag(vec![Entry::<F>::one(); l]),
                a,
                b,
                complete: true,
                primed,
            }
        }
        2 => {
            let l = l as usize;
            let a = (0..FAMILY_PREFIX)
                .map(|i| {
                    let mut w = vec![0];
                    w.extend(std::iter::repeat(1).take(i));
                    diag(vec![xw::<F>(&Word(w)); l])
                })
                .collect();
            let b = (0..FAMILY_PREFIX)
                .map(|j| {
                    let mut w = vec![1; j];
                    w.push(0);
                    diag(vec![yw::<F>(&Word(w)); l])
                })
                .collect();
            GeneratorMatrices {
                spec: *spec,
                case,
                size: l,
                ambient: if m == 0 {
                    Ambient::Limit
                } else {
                    Ambient::Quotient(m)
                },
                unit: diag(vec![Entry::<F>::one(); l]),
                a,
                b,
                complete: false,
                primed: Vec::new(),
            }
        }
        3 => {
            let depth = (-l) as u32;
            let e: Entry<F> = e_upto(depth);
            let a = (0..FAMILY_PREFIX as u32)
                .map(|i| vec![vec![e.mul(&SkewElem::x(depth + 1 + i))]])
                .collect();
            let b = (0..FAMILY_PREFIX as u32)
                .map(|j| vec![vec![SkewElem::y(depth + 1 + j).mul(&e)]])
                .collect();
            GeneratorMatrices {
                spec: *spec,
                case,
                size: 1,
                ambient: Ambient::Limit,
                unit: vec![vec![e]],
                a,
                b,
                complete: false,
                primed: Vec::new(),
            }
        }
        _ => {
            let size = n as usize + 1;
            let e: Entry<F> = e_upto(n);
            let te = e.scale(&t());
            let tinv_e = e.scale(&t::<F>().inverse().expect("t is nonzero"));
            let mut unit = diag(vec![Entry::<F>::one(); size]);
            unit[0][0] = e.clone();
            let mut a0 = vec![SkewElem::x(0); size];
            a0[0] = te.clone();
            let mut b0 = vec![SkewElem::y(0); size];
            b0[0] = tinv_e.clone();
            let mut a = vec![diag(a0)];
            let mut b = vec![diag(b0)];
            for i in 1..size {
                let mut ai = zero(size);
                let mut bi = zero(size);
                ai[0][i] = te.clone();
                bi[i][0] = tinv_e.clone();
                for p in 1..size {
                    ai[p][i] = SkewElem::x(p as u32);
                    bi[i][p] = SkewElem::y(p as u32);
                }
                a.push(ai);
                b.push(bi);
            }
            GeneratorMatrices {
                spec: *spec,
                case,
                size,
                ambient: Ambient::Limit,
                unit,
                a,
                b,
                complete: true,
                primed: Vec::new(),
            }
        }
    }
}

/// One identity and whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<IdentityCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

impl<F: Field> GeneratorMatrices<F> {
    fn equal(&self, a: &EntryMatrix<F>, b: &EntryMatrix<F>) -> bool {
        a.iter()
            .zip(b)
            .all(|(r, s)| r.iter().zip(s).all(|(x, y)| self.ambient.equal(x, y)))
    }

    /// A copy with `B_i` and `B_j` exchanged (a negative control).
    pub fn with_swapped_b(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        out.b.swap(i, j);
        out
    }

    pub fn to_doc(&self) -> GeneratorDoc {
        let render = |m: &EntryMatrix<F>| -> Vec<Vec<String>> {
            m.iter()
                .map(|r| r.iter().map(Entry::<F>::render).collect())
                .collect()
        };
        GeneratorDoc {
            case: self.case,
            spec: self.spec,
            size: self.size,
            ambient: match self.ambient {
                Ambient::Quotient(m) => format!("T_{m}"),
                Ambient::Limit => "T_0".into(),
            },
            unit: render(&self.unit),
            a: self.a.iter().map(render).collect(),
            b: self.b.iter().map(render).collect(),
            primed_x: self
                .primed
                .iter()
                .map(|w| w.render(crate::word::LetterKind::X))
                .collect(),
            primed_y: self
                .primed
                .iter()
                .map(|w| w.reverse().render(crate::word::LetterKind::Y))
                .collect(),
        }
    }
}

/// Printable form of [`GeneratorMatrices`].
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorDoc {
    pub case: u8,
    pub spec: HomSpec,
    pub size: usize,
    pub ambient: String,
    pub unit: Vec<Vec<String>>,
    pub a: Vec<Vec<Vec<String>>>,
    pub b: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub primed_x: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub primed_y: Vec<String>,
}

/// Checks `A_i B_j = δ_ij E`, `Σ B_i A_i = E` (finite families) and that
/// every matrix lies in the corner `E·M·E`.
pub fn verify_generators<F: Field>(g: &GeneratorMatrices<F>) -> VerificationReport {
    let e = &g.unit;
    let zero = zero::<F>(g.size);
    let mut checks = Vec::new();
    let mut push = |name: String, holds: bool| checks.push(IdentityCheck { name, holds });
    push("E*E = E".into(), g.equal(&mat_mul(e, e), e));
    for (i, a) in g.a.iter().enumerate() {
        for (j, b) in g.b.iter().enumerate() {
            let expected = if i == j { e } else { &zero };
            let rhs = if i == j { "E" } else { "0" };
            push(
                format!("A{i}*B{j} = {rhs}"),
                g.equal(&mat_mul(a, b), expected),
            );
        }
    }
    if g.complete {
        let sum =
            g.a.iter()
                .zip(&g.b)
                .fold(zero.clone(), |acc, (a, b)| mat_add(&acc, &mat_mul(b, a)));
        push("sum B_i*A_i = E".into(), g.equal(&sum, e));
    }
    for (i, a) in g.a.iter().enumerate() {
        push(
            format!("E*A{i}*E = A{i}"),
            g.equal(&mat_mul(&mat_mul(e, a), e), a),
        );
    }
    for (j, b) in g.b.iter().enumerate() {
        push(
            format!("E*B{j}*E = B{j}"),
            g.equal(&mat_mul(&mat_mul(e, b), e), b),
        );
    }
    VerificationReport { checks }
}
