//! Evaluation of parsed expressions in the series, skew and Leavitt
//! algebras over a field chosen at run time.

use num_traits::{One, Zero};
use pisr::field::{FieldKind, FieldScalar};
use pisr::leavitt::{e_n, UElem};
use pisr::linalg::Matrix;
use pisr::ratseries::LinRep;
use pisr::skewring::{e_upto, SkewElem};
use pisr::word::Monoword;

use crate::expr::Expr;
use crate::CliError;

pub type Series = LinRep<FieldScalar>;
pub type Skew = SkewElem<Series>;
pub type Leavitt = UElem<FieldScalar>;

#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub kind: FieldKind,
    /// Series: alphabet size. Skew: letters `0..=n`. Leavitt: letters `1..=n`.
    pub n: u32,
}

fn usage(column: Option<usize>, msg: impl Into<String>) -> CliError {
    let msg = msg.into();
    CliError::Usage(match column {
        Some(c) => format!("column {c}: {msg}"),
        None => msg,
    })
}

fn compute(msg: impl Into<String>) -> CliError {
    CliError::Compute(msg.into())
}

pub trait Algebra: Sized + Clone {
    fn scalar(c: FieldScalar) -> Self;
    fn x(i: u32, ctx: &Ctx) -> Result<Self, CliError>;
    fn y(i: u32, ctx: &Ctx) -> Result<Self, CliError>;
    fn e(ctx: &Ctx) -> Result<Self, CliError>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn as_scalar(&self) -> Option<FieldScalar>;
    fn invert(&self) -> Result<Self, CliError>;
    /// Moves every stored scalar into the working field.
    fn embed(&self, kind: FieldKind) -> Self;
}

pub fn evaluate<A: Algebra>(e: &Expr, ctx: &Ctx) -> Result<A, CliError> {
    Ok(eval::<A>(e, ctx)?.embed(ctx.kind))
}

fn eval<A: Algebra>(e: &Expr, ctx: &Ctx) -> Result<A, CliError> {
    Ok(match e {
        Expr::Number(digits) => A::scalar(
            FieldScalar::parse_in(digits, ctx.kind).map_err(|e| compute(e.to_string()))?,
        ),
        Expr::T { index, column } => {
            let t = index
                .checked_sub(1)
                .and_then(|v| ctx.kind.indeterminate(v as usize))
                .ok_or_else(|| {
                    usage(Some(*column), format!("t{index} is not available over {}", ctx.kind))
                })?;
            A::scalar(t)
        }
        Expr::X(i) => A::x(*i, ctx)?.embed(ctx.kind),
        Expr::Y(i) => A::y(*i, ctx)?.embed(ctx.kind),
        Expr::E => A::e(ctx)?.embed(ctx.kind),
        Expr::Add(a, b) => eval::<A>(a, ctx)?.add(&eval(b, ctx)?),
        Expr::Sub(a, b) => eval::<A>(a, ctx)?.sub(&eval(b, ctx)?),
        Expr::Mul(a, b) => eval::<A>(a, ctx)?.mul(&eval(b, ctx)?),
        Expr::Neg(a) => A::scalar(-FieldScalar::one()).mul(&eval(a, ctx)?),
        Expr::Div(a, b, column) => {
            let d = eval::<A>(b, ctx)?
                .as_scalar()
                .ok_or_else(|| usage(Some(*column), "only division by scalars is supported"))?;
            let inv = ctx
                .kind
                .embed(&d)
                .ok()
                .and_then(|d| pisr::Field::inverse(&d))
                .ok_or_else(|| compute(format!("column {column}: division by zero")))?;
            A::scalar(inv).mul(&eval(a, ctx)?)
        }
        Expr::Pow(a, k) => {
            let base = eval::<A>(a, ctx)?;
            (0..*k).fold(A::scalar(FieldScalar::one()), |acc, _| acc.mul(&base))
        }
        Expr::Inv(a, column) => eval::<A>(a, ctx)?
            .invert()
            .map_err(|e| compute(format!("column {column}: {}", e.message())))?,
    })
}

fn embed_scalar(c: &FieldScalar, kind: FieldKind) -> FieldScalar {
    kind.embed(c).unwrap_or_else(|_| c.clone())
}

pub fn embed_rep(r: &Series, kind: FieldKind) -> Series {
    let f = |v: &[FieldScalar]| v.iter().map(|c| embed_scalar(c, kind)).collect::<Vec<_>>();
    let mu = (0..r.letters() as u32)
        .map(|i| {
            let m = r.mu(i).expect("letter in range");
            Matrix::from_rows(m.to_rows().iter().map(|row| f(row)).collect())
        })
        .collect();
    if r.dim() == 0 {
        return r.clone();
    }
    LinRep::new(f(r.lambda()), mu, f(r.gamma())).expect("same shape")
}

/// `Some(c)` when `r` is the constant series `c`.
fn constant_of(r: &Series) -> Option<FieldScalar> {
    let c = r.tau();
    r.equals(&LinRep::constant(c.clone())).then_some(c)
}

impl Algebra for Series {
    fn scalar(c: FieldScalar) -> Self {
        LinRep::constant(c)
    }
    fn x(i: u32, ctx: &Ctx) -> Result<Self, CliError> {
        if i >= ctx.n {
            return Err(usage(None, format!("x{i} is outside an alphabet of {} letters", ctx.n)));
        }
        Ok(LinRep::letter(i))
    }
    fn y(i: u32, _: &Ctx) -> Result<Self, CliError> {
        Err(usage(None, format!("y{i}: series are in the letters x only")))
    }
    fn e(_: &Ctx) -> Result<Self, CliError> {
        Err(usage(None, "e is not a series"))
    }
    fn add(&self, other: &Self) -> Self {
        LinRep::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LinRep::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        LinRep::mul(self, other)
    }
    fn as_scalar(&self) -> Option<FieldScalar> {
        constant_of(self)
    }
    fn invert(&self) -> Result<Self, CliError> {
        LinRep::invert(self).map_err(|e| compute(e.to_string()))
    }
    fn embed(&self, kind: FieldKind) -> Self {
        embed_rep(self, kind)
    }
}

fn skew_index(i: u32, letter: char, ctx: &Ctx) -> Result<(), CliError> {
    if i > ctx.n {
        return Err(usage(None, format!("{letter}{i} is outside {letter}0..{letter}{}", ctx.n)));
    }
    Ok(())
}

impl Algebra for Skew {
    fn scalar(c: FieldScalar) -> Self {
        SkewElem::scalar(c)
    }
    fn x(i: u32, ctx: &Ctx) -> Result<Self, CliError> {
        skew_index(i, 'x', ctx)?;
        Ok(SkewElem::x(i))
    }
    fn y(i: u32, ctx: &Ctx) -> Result<Self, CliError> {
        skew_index(i, 'y', ctx)?;
        Ok(SkewElem::y(i))
    }
    fn e(ctx: &Ctx) -> Result<Self, CliError> {
        Ok(e_upto(ctx.n))
    }
    fn add(&self, other: &Self) -> Self {
        SkewElem::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        SkewElem::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        SkewElem::mul(self, other)
    }
    fn as_scalar(&self) -> Option<FieldScalar> {
        self.as_coeff().as_ref().and_then(constant_of)
    }
    fn invert(&self) -> Result<Self, CliError> {
        let r = self
            .as_coeff()
            .ok_or_else(|| compute("only elements of the coefficient ring can be inverted"))?;
        Ok(SkewElem::coeff(LinRep::invert(&r).map_err(|e| compute(e.to_string()))?))
    }
    fn embed(&self, kind: FieldKind) -> Self {
        SkewElem::from_terms(self.terms().map(|(w, r)| (w.clone(), embed_rep(r, kind))))
    }
}

fn leavitt_index(i: u32, letter: char, ctx: &Ctx) -> Result<(), CliError> {
    if i == 0 || i > ctx.n {
        return Err(usage(None, format!("{letter}{i} is outside {letter}1..{letter}{}", ctx.n)));
    }
    Ok(())
}

impl Algebra for Leavitt {
    fn scalar(c: FieldScalar) -> Self {
        UElem::constant(c)
    }
    fn x(i: u32, ctx: &Ctx) -> Result<Self, CliError> {
        leavitt_index(i, 'x', ctx)?;
        Ok(UElem::x(i))
    }
    fn y(i: u32, ctx: &Ctx) -> Result<Self, CliError> {
        leavitt_index(i, 'y', ctx)?;
        Ok(UElem::y(i))
    }
    fn e(ctx: &Ctx) -> Result<Self, CliError> {
        Ok(e_n(ctx.n))
    }
    fn add(&self, other: &Self) -> Self {
        UElem::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        UElem::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        UElem::mul(self, other)
    }
    fn as_scalar(&self) -> Option<FieldScalar> {
        if self.is_zero() {
            return Some(FieldScalar::zero());
        }
        (self.support() == 1)
            .then(|| self.coeff(&Monoword::one()))
            .filter(|c| !c.is_zero())
    }
    fn invert(&self) -> Result<Self, CliError> {
        self.as_scalar()
            .and_then(|c| pisr::Field::inverse(&c))
            .map(UElem::constant)
            .ok_or_else(|| compute("only nonzero scalars are invertible here"))
    }
    fn embed(&self, kind: FieldKind) -> Self {
        UElem::from_terms(self.terms().map(|(m, c)| (m.clone(), embed_scalar(c, kind))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use pisr::freealg::FreeElem;
    use pisr::word::Word;
    use pisr::Q;
    use proptest::prelude::*;

    fn ctx(kind: &str, n: u32) -> Ctx {
        Ctx {
            kind: kind.parse().unwrap(),
            n,
        }
    }

    fn series(text: &str, c: &Ctx) -> Series {
        evaluate(&parse_expr(text).unwrap(), c).unwrap()
    }

    #[test]
    fn geometric_series() {
        let c = ctx("q", 1);
        let g = series("(1 - x0)^-1", &c);
        for k in 0..5 {
            assert!(g.coeff(&Word(vec![0; k])).is_one());
        }
    }

    #[test]
    fn prime_field_literals_reduce() {
        let c = ctx("fp:7", 1);
        assert!(series("x0 + 6*x0", &c).is_zero());
        assert!(series("(x0+x0+x0+x0+x0+x0+x0)", &c).is_zero());
        assert!(series("x0/3 - 5*x0", &c).is_zero());
    }

    #[test]
    fn rational_function_scalars() {
        let c = ctx("qt:1", 1);
        let r = series("(t1 + 1)/t1*x0 - x0 - 1/t1*x0", &c);
        assert!(r.is_zero());
        assert!(matches!(
            evaluate::<Series>(&parse_expr("t2").unwrap(), &c),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn errors_are_classified() {
        let c = ctx("q", 2);
        let err = |t: &str| evaluate::<Series>(&parse_expr(t).unwrap(), &c).unwrap_err();
        assert!(matches!(err("x0^-1"), CliError::Compute(_)));
        assert!(matches!(err("x2"), CliError::Usage(_)));
        assert!(matches!(err("y0"), CliError::Usage(_)));
        assert!(matches!(err("x0/x1"), CliError::Usage(_)));
        assert!(matches!(err("x0/0"), CliError::Compute(_)));
    }

    fn word(letters: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = Word> {
        prop::collection::vec(letters, 0..4).prop_map(Word)
    }

    fn coeff() -> impl Strategy<Value = FieldScalar> {
        (-4i64..=4, 1i64..=3)
            .prop_filter("nonzero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| FieldScalar::Rational(Q::new(n.into(), d.into())))
    }

    fn poly() -> impl Strategy<Value = FreeElem<FieldScalar>> {
        prop::collection::vec((word(0..=1), coeff()), 0..4).prop_map(FreeElem::from_terms)
    }

    fn reparse<A: Algebra>(text: &str, c: &Ctx) -> A {
        evaluate(&parse_expr(text).unwrap(), c).unwrap()
    }

    proptest! {
        #[test]
        fn series_text_round_trips(p in poly()) {
            let c = ctx("q", 2);
            let r = LinRep::from_free(&p);
            prop_assert!(reparse::<Series>(&r.to_string(), &c).equals(&r));
        }

        #[test]
        fn skew_text_round_trips(terms in prop::collection::vec((word(0..=1), poly()), 0..3)) {
            let c = ctx("q", 1);
            let s = SkewElem::from_terms(terms.into_iter().map(|(w, p)| (w, LinRep::from_free(&p))));
            prop_assert!(reparse::<Skew>(&s.render(), &c).equals(&s));
        }

        #[test]
        fn leavitt_text_round_trips(
            terms in prop::collection::vec((word(1..=2), word(1..=2), coeff()), 0..4)
        ) {
            let c = ctx("q", 2);
            let u = UElem::from_terms(terms.into_iter().map(|(y, x, k)| (Monoword::new(y, x), k)));
            prop_assert!(reparse::<Leavitt>(&u.render(), &c) == u);
        }
    }

    #[test]
    fn skew_and_leavitt_relations() {
        let c = ctx("q", 2);
        let s: Skew = evaluate(&parse_expr("x1*y1 - 1 + x0*y1").unwrap(), &c).unwrap();
        assert!(s.is_zero());
        let u: Leavitt = evaluate(&parse_expr("x2*y2 + x1*y2").unwrap(), &c).unwrap();
        assert!(u.is_one());
    }
}
