use proptest::prelude::*;

use pisr::field::Field;
use pisr::selftest::{random_skew, rng};
use pisr::skewring::{Coefficient, SkewElem, SkewRing};
use pisr::{QPoly, QSeries, QSkew, Word, Q};

type PolySkew = SkewElem<QPoly>;

const N: u32 = 1;

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..=N, 0..=max).prop_map(Word)
}

fn poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((word(2), -2i64..=2), 1..3)
        .prop_map(|ts| QPoly::from_terms(ts.into_iter().map(|(w, c)| (w, Q::from_int(c)))))
}

fn poly_skew() -> impl Strategy<Value = PolySkew> {
    prop::collection::vec((word(2), poly()), 1..3).prop_map(SkewElem::from_terms)
}

fn series_skew() -> impl Strategy<Value = QSkew> {
    any::<u64>().prop_map(|seed| random_skew(&mut rng(seed, 0), N, 2))
}

fn idempotent_laws<C: Coefficient>(n: u32) {
    let ring = SkewRing::new(n);
    let e: SkewElem<C> = ring.e();
    assert!(e.mul(&e).equals(&e));
    for j in 0..=n {
        assert!(e.mul(&SkewElem::y(j)).is_zero());
        assert!(SkewElem::<C>::x(j).mul(&e).is_zero());
    }
}

#[test]
fn e_is_idempotent_and_annihilates_letters() {
    for n in 0..4 {
        idempotent_laws::<QPoly>(n);
        idempotent_laws::<QSeries>(n);
    }
}

/// The constant term of the coefficient of the empty `Y`-word.
fn corner<C: Coefficient>(s: &SkewElem<C>) -> C::Scalar {
    s.coefficient(&Word::empty())
        .map_or_else(<C::Scalar as num_traits::Zero>::zero, |r| r.tau())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn associative_over_polynomials(a in poly_skew(), b in poly_skew(), c in poly_skew()) {
        prop_assert!(a.mul(&b).mul(&c).equals(&a.mul(&b.mul(&c))));
        prop_assert!(a.mul(&b.add(&c)).equals(&a.mul(&b).add(&a.mul(&c))));
    }

    #[test]
    fn associative_over_series(a in series_skew(), b in series_skew(), c in series_skew()) {
        prop_assert!(a.mul(&b).mul(&c).equals(&a.mul(&b.mul(&c))));
    }

    #[test]
    fn corner_is_scalar(s in poly_skew(), t in series_skew()) {
        let ring = SkewRing::new(N);
        let e: PolySkew = ring.e();
        prop_assert!(e.mul(&s).mul(&e).equals(&e.scale(&corner(&s))));
        let e: QSkew = ring.e();
        prop_assert!(e.mul(&t).mul(&e).equals(&e.scale(&corner(&t))));
    }

    #[test]
    fn ideal_is_two_sided(s in series_skew(), t in series_skew(), u in series_skew()) {
        let ring = SkewRing::new(N);
        let a = s.mul(&ring.e()).mul(&t);
        prop_assert!(ring.ideal_member(&a).holds);
        prop_assert!(ring.ideal_member(&u.mul(&a)).holds);
        prop_assert!(ring.ideal_member(&a.mul(&u)).holds);
        prop_assert!(ring.ideal_member(&a.add(&ring.e())).holds);
        prop_assert!(!ring.ideal_member(&SkewElem::<QPoly>::one()).holds);
    }

    #[test]
    fn witnesses_verify(a in series_skew()) {
        let ring = SkewRing::new(N);
        match ring.t_witness(&a) {
            Ok(w) => {
                let check = SkewElem::x_word(&w.m).mul(&a).mul(&w.g);
                prop_assert!(ring.t_equal(&check, &SkewElem::one()).holds);
            }
            Err(_) => prop_assert!(ring.ideal_member(&a).holds),
        }
    }
}
