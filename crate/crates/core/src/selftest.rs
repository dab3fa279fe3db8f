//! Seeded runners for the acceptance criteria, plus the random generators
//! they share with the property tests.
//!
//! Every runner is deterministic in its seed and reports the number of
//! cases, the failures it found and its wall-clock time against a limit.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, Fp, MPoly, RatFunc, Q};
use crate::freealg::FreeElem;
use crate::kzero::{analyze_pisr_shape, grothendieck_group, MonoidPresentation};
use crate::leavitt::{uinf_witness, v_normal_form, v_witness, UElem};
use crate::linalg::Matrix;
use crate::ratseries::{LinRep, TruncSeries};
use crate::realize::{
    build_generators, plan_chain, spot_check_sigma_prime, verify_generators, CyclicGroup,
    CyclicTag, HomSpec,
};
use crate::skewring::{constant_term_word, Hypothesis, SkewElem, SkewRing};
use crate::word::{Monoword, Word};

pub type SuiteRng = ChaCha8Rng;

/// Seed used by `selftest` and the acceptance target.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub const CRITERIA: u8 = 12;

/// Failures kept verbatim per criterion; the count is always exact.
const KEPT_FAILURES: usize = 8;

pub fn rng(seed: u64, stream: u64) -> SuiteRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub cases: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CriterionResult {
    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.cases > 0 && self.within_limit()
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {}: {} cases, {} failures, {:.2?} (limit {:?})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.cases,
            self.failure_count,
            self.elapsed,
            self.limit
        )?;
        for msg in &self.failures {
            write!(f, "\n       {msg}")?;
        }
        Ok(())
    }
}

struct Tally {
    cases: usize,
    failure_count: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(msg());
            }
        }
    }
}

fn title(id: u8) -> &'static str {
    match id {
        1 => "K0 of Leavitt monoids",
        2 => "skew relations over rational series",
        3 => "derivation law",
        4 => "rational and truncated backends agree",
        5 => "ideal membership",
        6 => "witness soundness",
        7 => "constant-term words",
        8 => "word-system verifier",
        9 => "generator grid",
        10 => "inverses of I + p(A)",
        11 => "chain planner",
        12 => "monoid shape",
        _ => "unknown",
    }
}

fn limit(id: u8) -> Duration {
    Duration::from_secs(match id {
        1 | 2 | 12 => 1,
        3 | 7 => 10,
        4 => 30,
        5 => 60,
        6 | 10 | 11 => 120,
        8 => 5,
        9 => 300,
        _ => 0,
    })
}

/// Runs criterion `id` (1 to 12).
pub fn run_criterion(id: u8, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut r = rng(seed, u64::from(id));
    match id {
        1 => k0_leavitt(&mut t),
        2 => skew_relations(&mut t),
        3 => derivation_law(&mut t, &mut r),
        4 => backend_agreement(&mut t, &mut r),
        5 => ideal_membership(&mut t, &mut r),
        6 => witnesses(&mut t, &mut r),
        7 => constant_term_words(&mut t, &mut r),
        8 => word_systems(&mut t),
        9 => generator_grid(&mut t),
        10 => sigma_spot_checks(&mut t, &mut r),
        11 => chain_planner(&mut t),
        12 => monoid_shape(&mut t),
        _ => t.check(false, || format!("no criterion {id}")),
    }
    CriterionResult {
        id,
        title: title(id),
        cases: t.cases,
        failure_count: t.failure_count,
        failures: t.failures,
        elapsed: start.elapsed(),
        limit: limit(id),
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    (1..=CRITERIA).map(|id| run_criterion(id, seed)).collect()
}

/// Scalars that can be drawn at random: small integers, and for `ℚ(t)`
/// small affine numerators over `1` or `1 + t`.
pub trait Sample: Field {
    fn sample(rng: &mut SuiteRng) -> Self;
}

fn small_nonzero(rng: &mut SuiteRng) -> i64 {
    let v = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

impl Sample for Q {
    fn sample(rng: &mut SuiteRng) -> Self {
        Q::from_int(small_nonzero(rng))
    }
}

impl<const P: u64> Sample for Fp<P> {
    fn sample(rng: &mut SuiteRng) -> Self {
        Fp::from_int(rng.gen_range(1..P as i64))
    }
}

impl Sample for RatFunc<Q> {
    fn sample(rng: &mut SuiteRng) -> Self {
        let t = MPoly::var(0);
        let num = MPoly::constant(Q::from_int(small_nonzero(rng)))
            .add(&t.scale(&Q::from_int(rng.gen_range(-2..=2))));
        let den = if rng.gen_bool(0.5) {
            MPoly::one()
        } else {
            MPoly::one().add(&t)
        };
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

fn sparse<F: Sample>(rng: &mut SuiteRng, density: f64) -> F {
    if rng.gen_bool(density) {
        F::sample(rng)
    } else {
        F::zero()
    }
}

/// A random linear representation of dimension `1..=max_dim` over the
/// letters `0..letters`, with about half of the entries nonzero.
pub fn random_linrep<F: Sample>(rng: &mut SuiteRng, max_dim: usize, letters: u32) -> LinRep<F> {
    let d = rng.gen_range(1..=max_dim);
    let lambda = (0..d).map(|_| sparse(rng, 0.6)).collect();
    let gamma = (0..d).map(|_| sparse(rng, 0.6)).collect();
    let mu = (0..letters)
        .map(|_| {
            Matrix::from_rows(
                (0..d)
                    .map(|_| (0..d).map(|_| sparse(rng, 0.4)).collect())
                    .collect(),
            )
        })
        .collect();
    LinRep::new(lambda, mu, gamma).expect("consistent dimensions")
}

pub fn random_nonzero_linrep<F: Sample>(
    rng: &mut SuiteRng,
    max_dim: usize,
    letters: u32,
) -> LinRep<F> {
    loop {
        let r = random_linrep(rng, max_dim, letters);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A series expression over `ℚ`, evaluated independently in both backends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesExpr {
    Const(i64),
    Letter(u32),
    Add(Box<SeriesExpr>, Box<SeriesExpr>),
    Sub(Box<SeriesExpr>, Box<SeriesExpr>),
    Mul(Box<SeriesExpr>, Box<SeriesExpr>),
    /// The inverse of the operand, or of `1 + operand` when the operand
    /// has zero constant term.
    Inv(Box<SeriesExpr>),
}

/// A random expression of depth at most `depth` (a leaf has depth 1).
pub fn random_expr(rng: &mut SuiteRng, depth: usize, letters: u32) -> SeriesExpr {
    if depth <= 1 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.6) {
            SeriesExpr::Letter(rng.gen_range(0..letters))
        } else {
            SeriesExpr::Const(small_nonzero(rng))
        };
    }
    let op = rng.gen_range(0..4);
    let mut sub = || Box::new(random_expr(rng, depth - 1, letters));
    match op {
        0 => SeriesExpr::Add(sub(), sub()),
        1 => SeriesExpr::Sub(sub(), sub()),
        2 => SeriesExpr::Mul(sub(), sub()),
        _ => SeriesExpr::Inv(sub()),
    }
}

impl SeriesExpr {
    pub fn eval_linrep(&self) -> LinRep<Q> {
        match self {
            SeriesExpr::Const(c) => LinRep::constant(Q::from_int(*c)),
            SeriesExpr::Letter(i) => LinRep::letter(*i),
            SeriesExpr::Add(a, b) => a.eval_linrep().add(&b.eval_linrep()),
            SeriesExpr::Sub(a, b) => a.eval_linrep().sub(&b.eval_linrep()),
            SeriesExpr::Mul(a, b) => a.eval_linrep().mul(&b.eval_linrep()),
            SeriesExpr::Inv(a) => {
                let mut v = a.eval_linrep();
                if v.tau().is_zero() {
                    v = LinRep::one().add(&v);
                }
                v.invert().expect("nonzero constant term")
            }
        }
    }

    pub fn eval_trunc(&self, precision: usize) -> TruncSeries<Q> {
        match self {
            SeriesExpr::Const(c) => TruncSeries::constant(Q::from_int(*c)),
            SeriesExpr::Letter(i) => TruncSeries::letter(*i),
            SeriesExpr::Add(a, b) => a.eval_trunc(precision).add(&b.eval_trunc(precision)),
            SeriesExpr::Sub(a, b) => a.eval_trunc(precision).sub(&b.eval_trunc(precision)),
            SeriesExpr::Mul(a, b) => a.eval_trunc(precision).mul(&b.eval_trunc(precision)),
            SeriesExpr::Inv(a) => {
                let mut v = a.eval_trunc(precision);
                if v.tau().is_zero() {
                    v = TruncSeries::one().add(&v);
                }
                v.truncate(precision)
                    .invert()
                    .expect("nonzero constant term")
            }
        }
    }
}

fn random_word(rng: &mut SuiteRng, max_len: usize, letters: std::ops::RangeInclusive<u32>) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word((0..len).map(|_| rng.gen_range(letters.clone())).collect())
}

/// `Σ y_w r_w` with `|w| ≤ max_y` over the letters `0..=n`.
pub fn random_skew(rng: &mut SuiteRng, n: u32, max_y: usize) -> SkewElem<LinRep<Q>> {
    let terms = rng.gen_range(1..=3);
    let mut out = SkewElem::zero();
    for _ in 0..terms {
        let w = random_word(rng, max_y, 0..=n);
        let r = random_nonzero_linrep::<Q>(rng, 2, n + 1);
        out = out.add(&SkewElem::term(w, r));
    }
    out
}

/// A combination of monowords `y_I x_J` with `|I| + |J| ≤ max_degree`
/// over the letters `1..=n`.
pub fn random_uelem(rng: &mut SuiteRng, n: u32, max_degree: usize) -> UElem<Q> {
    let terms = rng.gen_range(1..=3);
    UElem::from_terms((0..terms).map(|_| {
        let d = rng.gen_range(0..=max_degree);
        let split = rng.gen_range(0..=d);
        let y: Vec<u32> = (0..split).map(|_| rng.gen_range(1..=n)).collect();
        let x: Vec<u32> = (split..d).map(|_| rng.gen_range(1..=n)).collect();
        (Monoword::new(y, x), Q::from_int(small_nonzero(rng)))
    }))
}

/// An `r×r` matrix of polynomials without constant term in `Z_0..Z_{vars-1}`.
pub fn random_sigma_input(rng: &mut SuiteRng, vars: u32, r: usize) -> Vec<Vec<FreeElem<Q>>> {
    (0..r)
        .map(|_| {
            (0..r)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        return FreeElem::zero();
                    }
                    FreeElem::from_terms((0..rng.gen_range(1..=2)).map(|_| {
                        let len = rng.gen_range(1..=2);
                        let w = Word((0..len).map(|_| rng.gen_range(0..vars)).collect());
                        (w, Q::from_int(small_nonzero(rng)))
                    }))
                })
                .collect()
        })
        .collect()
}

fn tag(m: u64) -> CyclicTag {
    CyclicTag::new(m).expect("legal tag")
}

/// Every legal spec with `n, m ∈ {0, 2, 3, 4}` in the ranges exercised by
/// the grid criterion.
pub fn grid_specs() -> Vec<HomSpec> {
    let mut out = Vec::new();
    for n in [2u64, 3, 4] {
        for m in [2u64, 3, 4] {
            for l in 1..=m as i64 {
                if let Ok(s) = HomSpec::new(tag(n), tag(m), l) {
                    out.push(s);
                }
            }
        }
    }
    for m in [0u64, 2, 3, 4] {
        for l in [1, 2] {
            out.push(HomSpec::new(tag(0), tag(m), l).expect("case 2 spec"));
        }
    }
    for l in [0, -1, -2] {
        out.push(HomSpec::new(tag(0), tag(0), l).expect("case 3 spec"));
    }
    for n in [2u64, 3] {
        out.push(HomSpec::new(tag(n), tag(0), 0).expect("case 4 spec"));
    }
    out
}

fn k0_leavitt(t: &mut Tally) {
    for n in 2..=12u64 {
        let text = format!("I | {n}I = I");
        let g = MonoidPresentation::parse(&text).and_then(|p| grothendieck_group(&p));
        let ok = match &g {
            Ok(g) if n == 2 => g.is_trivial(),
            Ok(g) => g.invariant_factors == [n - 1] && g.generator_images == [vec![1]],
            Err(_) => false,
        };
        t.check(ok, || format!("`{text}` gave {g:?}"));
    }
    for n in 2..=6u64 {
        let text = format!("I, P | I = {n}I + P");
        let g = MonoidPresentation::parse(&text).and_then(|p| grothendieck_group(&p));
        let ok = matches!(&g, Ok(g) if g.invariant_factors == [0]);
        t.check(ok, || format!("`{text}` gave {g:?}"));
    }
}

fn skew_relations(t: &mut Tally) {
    for (name, ok) in SkewRing::new(2).ideal_tag_checks::<LinRep<Q>>() {
        t.check(ok, || format!("{name} fails"));
    }
}

fn derivation_law_over<F: Sample>(t: &mut Tally, rng: &mut SuiteRng, field: &str) {
    const LETTERS: u32 = 2;
    for k in 0..100 {
        let a = random_nonzero_linrep::<F>(rng, 3, LETTERS);
        let b = random_nonzero_linrep::<F>(rng, 3, LETTERS);
        let ab = a.mul(&b);
        for i in 0..LETTERS {
            let lhs = ab.transduce(i);
            let rhs = a.transduce(i).scale(&b.tau()).add(&a.mul(&b.transduce(i)));
            t.check(lhs.equals(&rhs), || {
                format!("{field}: pair {k}, letter {i}")
            });
        }
    }
}

fn derivation_law(t: &mut Tally, rng: &mut SuiteRng) {
    derivation_law_over::<Q>(t, rng, "Q");
    derivation_law_over::<Fp<7>>(t, rng, "F7");
    derivation_law_over::<RatFunc<Q>>(t, rng, "Q(t)");
}

fn backend_agreement(t: &mut Tally, rng: &mut SuiteRng) {
    const LETTERS: u32 = 2;
    const LEN: usize = 12;
    for k in 0..100 {
        let e = random_expr(rng, 5, LETTERS);
        let exact = e.eval_linrep().coefficients(LEN, LETTERS);
        let trunc = e.eval_trunc(LEN);
        let mut ok = trunc.precision() >= LEN;
        let zero = Q::zero();
        for w in exact.keys().chain(trunc.terms().map(|(w, _)| w)) {
            if w.len() >= LEN {
                continue;
            }
            let a = exact.get(w).unwrap_or(&zero);
            let b = trunc.coeff(w).unwrap_or_else(Q::zero);
            if *a != b {
                ok = false;
                break;
            }
        }
        t.check(ok, || format!("tree {k}: {e:?}"));
    }
}

fn ideal_membership(t: &mut Tally, rng: &mut SuiteRng) {
    let ring = SkewRing::new(2);
    let e: SkewElem<LinRep<Q>> = ring.e();
    for k in 0..200 {
        let terms = rng.gen_range(1..=3);
        let mut a = SkewElem::zero();
        for _ in 0..terms {
            let w = random_word(rng, 3, 0..=2);
            let r = random_linrep::<Q>(rng, 2, 3);
            a = a.add(&SkewElem::y_word(w).mul(&e).mul(&SkewElem::coeff(r)));
        }
        t.check(ring.ideal_member(&a).holds, || {
            format!("sample {k} of the form y_I e r tested outside I")
        });
    }
    for k in 0..200 {
        let r = random_nonzero_linrep::<Q>(rng, 3, 3);
        t.check(!ring.ideal_member(&SkewElem::coeff(r)).holds, || {
            format!("nonzero coefficient {k} tested inside I")
        });
    }
}

fn witnesses(t: &mut Tally, rng: &mut SuiteRng) {
    let ring = SkewRing::new(2);
    let mut done = 0;
    while done < 100 {
        let a = random_skew(rng, 2, 3);
        if ring.ideal_member(&a).holds {
            continue;
        }
        done += 1;
        let ok = ring.t_witness(&a).is_ok_and(|w| {
            let check = a.left_x_word(&w.m).mul(&w.g);
            ring.t_equal(&check, &SkewElem::one()).holds
        });
        t.check(ok, || format!("t_witness failed on {}", a.render()));
    }
    for n in [2u32, 3] {
        let mut done = 0;
        while done < 50 {
            let a = v_normal_form(&random_uelem(rng, n, 3), n);
            if a.is_zero() {
                continue;
            }
            done += 1;
            let a = a.into_u();
            let ok = v_witness(&a, n).is_ok_and(|c| c.check_v(&a, n));
            t.check(ok, || format!("v_witness failed on {a} in V_(1,{n})"));
        }
    }
    let mut done = 0;
    while done < 50 {
        let n = rng.gen_range(2..=3);
        let a = random_uelem(rng, n, 3);
        if a.is_zero() {
            continue;
        }
        done += 1;
        let ok = uinf_witness(&a, n).is_ok_and(|c| c.check_u(&a));
        t.check(ok, || format!("uinf_witness failed on {a}"));
    }
}

fn constant_term_words(t: &mut Tally, rng: &mut SuiteRng) {
    type S = SkewElem<LinRep<Q>>;
    let times_w =
        |r: &LinRep<Q>, w: &Word| S::coeff(r.clone()).mul(&S::y_word(w.clone())).as_coeff();
    for k in 0..100 {
        let r = random_nonzero_linrep::<Q>(rng, 6, 3);
        let ok = constant_term_word(std::slice::from_ref(&r))
            .ok()
            .and_then(|w| times_w(&r, &w))
            .is_some_and(|p| !p.tau().is_zero());
        t.check(ok, || format!("single series {k}"));
    }
    for k in 0..100 {
        let rs: Vec<LinRep<Q>> = (0..3).map(|_| random_nonzero_linrep(rng, 6, 3)).collect();
        let ok = constant_term_word(&rs).ok().is_some_and(|w| {
            let products: Option<Vec<LinRep<Q>>> = rs.iter().map(|r| times_w(r, &w)).collect();
            products.is_some_and(|ps| ps.iter().any(|p| !p.tau().is_zero()))
        });
        t.check(ok, || format!("triple {k}"));
    }
}

fn word_systems(t: &mut Tally) {
    type S = SkewElem<LinRep<Q>>;
    for n in 2..=4u32 {
        let ring = SkewRing::new(n);
        let ws: Vec<Word> = (0..=n).map(Word::letter).collect();
        let qs: Vec<S> = (0..=n).map(S::x).collect();
        let rep = ring.verify_word_system(&ws, &qs);
        t.check(rep.valid && rep.residue == 1, || {
            format!("canonical system for n = {n}: {:?}", rep.violations)
        });
    }
    let ring = SkewRing::new(2);
    let ws: Vec<Word> = (0..=2).map(Word::letter).collect();
    let qs: Vec<S> = (0..=2).map(S::x).collect();
    let tampered: [(&str, Vec<Word>, Vec<S>, Hypothesis); 3] = [
        (
            "dropped pair",
            ws[..2].to_vec(),
            qs[..2].to_vec(),
            Hypothesis::SumIsOne,
        ),
        (
            "swapped q0 and q1",
            ws.clone(),
            vec![qs[1].clone(), qs[0].clone(), qs[2].clone()],
            Hypothesis::DiagonalNonzero { i: 0 },
        ),
        (
            "repeated word",
            vec![ws[0].clone(), ws[0].clone(), ws[2].clone()],
            vec![qs[0].clone(), qs[0].clone(), qs[2].clone()],
            Hypothesis::Orthogonal { i: 0, j: 1 },
        ),
    ];
    for (name, ws, qs, expected) in tampered {
        let rep = ring.verify_word_system(&ws, &qs);
        let named = rep.violations.iter().any(|v| v.hypothesis == expected);
        t.check(!rep.valid && named, || {
            format!("{name}: expected `{expected}`, got {:?}", rep.violations)
        });
    }
}

fn verify_spec(t: &mut Tally, spec: &HomSpec) {
    let rep = verify_generators(&build_generators::<Q>(spec));
    t.check(rep.passed(), || {
        let names: Vec<&str> = rep.failures().map(|c| c.name.as_str()).collect();
        format!("{spec}: {}", names.join(", "))
    });
}

fn generator_grid(t: &mut Tally) {
    for spec in grid_specs() {
        verify_spec(t, &spec);
    }
}

fn sigma_spot_checks(t: &mut Tally, rng: &mut SuiteRng) {
    for spec in grid_specs().into_iter().filter(|s| s.case() <= 2) {
        let g = build_generators::<Q>(&spec);
        let vars = g.a.len() as u32;
        for k in 0..5 {
            let r = rng.gen_range(1..=2);
            let p = random_sigma_input(rng, vars, r);
            let res = spot_check_sigma_prime(&g, &p);
            t.check(res.as_ref().is_ok_and(|c| c.verified()), || {
                format!("{spec}, sample {k}: {:?}", res.as_ref().err())
            });
        }
    }
}

fn chain_planner(t: &mut Tally) {
    let g = CyclicGroup {
        factors: vec![tag(2), tag(0)],
        unit: vec![1, 1],
    };
    let id = vec![vec![1, 0], vec![0, 1]];
    let maps = vec![id.clone(), id];
    let plan = match plan_chain(&[g.clone(), g.clone(), g], &maps) {
        Ok(p) => p,
        Err(e) => return t.check(false, || format!("planner rejected the chain: {e}")),
    };
    t.check(plan.reproduces(&maps), || {
        "component specs do not reproduce the transition matrices".into()
    });
    for spec in plan.specs() {
        verify_spec(t, spec);
    }
}

fn monoid_shape(t: &mut Tally) {
    for n in 2..=6u64 {
        let text = format!("g | {n}g = g");
        let rep = MonoidPresentation::parse(&text).and_then(|p| analyze_pisr_shape(&p, 64));
        let ok = rep.as_ref().is_ok_and(|r| {
            let expected: Vec<u64> = if n == 2 { vec![] } else { vec![n - 1] };
            r.conical == Some(true)
                && r.simple == Some(true)
                && r.nonzero_part_is_group == Some(true)
                && r.group
                    .as_ref()
                    .is_some_and(|g| g.invariant_factors == expected)
                && r.matches_grothendieck == Some(true)
        });
        t.check(ok, || format!("`{text}`: {rep:?}"));
    }
}
