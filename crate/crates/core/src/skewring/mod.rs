//! The skew extension `S = R<Y; τ, δ>` with `x_i·y_j = δ_ij`, the ideal
//! `I = SeS` and equality in `T = S/I`.

mod backend;
mod elem;
mod ring;

pub use backend::Coefficient;
pub use elem::SkewElem;
pub use ring::{
    e_upto, constant_term_word, sinf_witness, Hypothesis, SkewRing, TWitness, TraceStep, Verdict,
    Violation, WordSystemReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SkewError {
    #[error("element lies in the ideal SeS")]
    InIdeal,
    #[error("input {0} is zero")]
    ZeroInput(usize),
    #[error("no inputs given")]
    EmptyInput,
    #[error("`{0}` is not invertible in the coefficient ring")]
    NotInvertible(String),
    #[error("witness check failed: product is {0}")]
    VerificationFailed(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    use crate::field::{Field, Q};
    use crate::freealg::FreeElem;
    use crate::ratseries::{LinRep, TruncSeries};
    use crate::word::Word;

    type R = LinRep<Q>;
    type S = SkewElem<R>;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn xs(w: &[u32]) -> S {
        S::x_word(&Word(w.to_vec()))
    }

    #[test]
    fn commutation_rule() {
        for i in 0..3 {
            for j in 0..3 {
                let p = S::x(i).mul(&S::y(j));
                assert_eq!(p, if i == j { S::one() } else { S::zero() });
            }
        }
        assert!(xs(&[0, 1]).mul(&S::y(0)).is_zero());
        assert_eq!(xs(&[0, 1]).mul(&S::y(1)), S::x(0));
    }

    #[test]
    fn geometric_series_moves_past_y() {
        // (1 - x0)^-1 · y0 = y0·1 + (1 - x0)^-1
        let g = S::coeff(R::one().sub(&R::letter(0)).invert().unwrap());
        let lhs = g.mul(&S::y(0));
        let rhs = S::y(0).add(&g);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn membership_examples() {
        let ring = SkewRing::new(2);
        let e: S = ring.e();
        assert!(ring.ideal_member(&e).holds);
        assert!(!ring.ideal_member(&S::x(0)).holds);
        assert!(ring.ideal_member(&S::y(0).mul(&e).mul(&S::x(1))).holds);
    }

    #[test]
    fn equality_in_t() {
        let ring = SkewRing::new(2);
        let sum = (0..=2).fold(S::zero(), |acc, i| acc.add(&S::y(i).mul(&S::x(i))));
        assert!(ring.t_equal(&sum, &S::one()).holds);
        assert!(!ring.t_equal(&S::y(0).mul(&S::x(0)), &S::one()).holds);
        let a = S::y(1).add(&S::x(2));
        assert!(ring.t_equal(&a, &a).holds);
    }

    #[test]
    fn constant_term_word_examples() {
        let x0x1 = R::letter(0).mul(&R::letter(1));
        let w = constant_term_word(&[x0x1.clone()]).unwrap();
        assert_eq!(w, Word::from([1, 0]));
        assert_eq!(S::coeff(x0x1).mul(&S::y_word(w)), S::one());

        assert_eq!(
            constant_term_word(&[R::one().add(&R::letter(0))]).unwrap(),
            Word::empty()
        );

        let g = R::one().sub(&R::letter(0)).invert().unwrap();
        let inputs = [g.mul(&R::letter(1)), R::letter(1)];
        let w = constant_term_word(&inputs).unwrap();
        assert_eq!(w, Word::from([1]));
        let products: Vec<R> = inputs
            .iter()
            .map(|r| {
                S::coeff(r.clone())
                    .mul(&S::y_word(w.clone()))
                    .as_coeff()
                    .unwrap()
            })
            .collect();
        assert_eq!(products[1].tau(), q(1));
        assert!(!products[0].tau().is_zero());
        assert_eq!(
            constant_term_word(&[R::zero()]).unwrap_err(),
            SkewError::ZeroInput(0)
        );
    }

    #[test]
    fn t_witness_examples() {
        let ring = SkewRing::new(2);
        let w = ring.t_witness(&S::one()).unwrap();
        assert_eq!((w.m.clone(), w.g.clone()), (Word::empty(), S::one()));

        let w = ring.t_witness(&S::y(0)).unwrap();
        assert_eq!(w.m, Word::from([0]));
        assert_eq!(w.g, S::one());

        let w = ring.t_witness(&S::x(0)).unwrap();
        assert_eq!(w.m, Word::empty());
        assert_eq!(w.g, S::y(0));

        let e: S = ring.e();
        assert_eq!(ring.t_witness(&e).unwrap_err(), SkewError::InIdeal);
    }

    #[test]
    fn word_systems() {
        for n in 2..=4 {
            let ring = SkewRing::new(n);
            let ws: Vec<Word> = (0..=n).map(Word::letter).collect();
            let qs: Vec<S> = (0..=n).map(S::x).collect();
            let rep = ring.verify_word_system(&ws, &qs);
            assert!(rep.valid, "{:?}", rep.violations);
            assert_eq!(rep.s as u32, n + 1);
            assert_eq!(rep.residue, 1);
        }
        let ring = SkewRing::new(2);
        let rep = ring.verify_word_system(&[Word::empty()], &[S::one()]);
        assert!(rep.valid && rep.s == 1);

        let rep = ring.verify_word_system(&[Word::from([0]), Word::from([0])], &[S::x(0), S::x(0)]);
        assert!(!rep.valid);
        assert!(rep
            .violations
            .iter()
            .any(|v| v.hypothesis == Hypothesis::Orthogonal { i: 0, j: 1 }));
    }

    #[test]
    fn nested_word_system() {
        // Refine the y0 branch once: y0 x0 = Σ_l y0 y_l x_l x0.
        let ring = SkewRing::new(2);
        let mut ws = vec![Word::from([1]), Word::from([2])];
        let mut qs = vec![S::x(1), S::x(2)];
        for l in 0..=2 {
            ws.push(Word::from([0, l]));
            qs.push(xs(&[l, 0]));
        }
        let rep = ring.verify_word_system(&ws, &qs);
        assert!(rep.valid, "{:?}", rep.violations);
        assert_eq!((rep.s, rep.residue), (5, 1));
        assert!(rep.trace.iter().any(|t| t.path == vec![0] && t.size == 3));
    }

    #[test]
    fn ideal_tag_identities() {
        for (name, ok) in SkewRing::new(2).ideal_tag_checks::<R>() {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn sinf_witness_uses_fresh_letter() {
        let a = S::y(1).mul(&S::x(0)).add(&S::x(1));
        let (beta, gamma) = sinf_witness(&a).unwrap();
        assert_eq!(beta.mul(&a).mul(&gamma), S::one());
        let e: S = e_upto(1);
        let (beta, gamma) = sinf_witness(&e).unwrap();
        assert_eq!(beta.mul(&e).mul(&gamma), S::one());
    }

    #[test]
    fn backends_agree_on_products() {
        type P = SkewElem<FreeElem<Q>>;
        type T = SkewElem<TruncSeries<Q>>;
        let a = P::y(0).mul(&P::x(1)).add(&P::x(0).mul(&P::y(0)));
        let b = P::x(0).mul(&P::x(1)).add(&P::y(1));
        let ab = a.mul(&b);
        let ta = T::y(0).mul(&T::x(1)).add(&T::x(0).mul(&T::y(0)));
        let tb = T::x(0).mul(&T::x(1)).add(&T::y(1));
        let tab = ta.mul(&tb);
        for (w, r) in ab.terms() {
            let t = tab.coefficient(w).expect("same support");
            for (u, c) in r.terms() {
                assert_eq!(t.coeff(u), Some(c.clone()));
            }
        }
    }

    #[test]
    fn truncated_membership_reports_precision() {
        let ring = SkewRing::new(1);
        let x = TruncSeries::from_free(&FreeElem::letter(0), 5);
        let a = SkewElem::<TruncSeries<Q>>::coeff(x);
        let v = ring.ideal_member(&a);
        assert!(!v.holds);
        assert_eq!(v.precision, Some(5));
    }
}
