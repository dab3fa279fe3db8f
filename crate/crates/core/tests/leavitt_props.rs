use proptest::prelude::*;

use pisr::field::Field;
use pisr::leavitt::{
    e_n, from_skew, monoword_mul, to_skew, uinf_witness, v_member, v_normal_form_with,
    v_witness, LeavittError, RewriteOrder,
};
use pisr::skewring::e_upto;
use pisr::word::Monoword;
use pisr::{QLeavitt, Word, Q};

const N: u32 = 2;

fn letters(max: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=N, 0..=max)
}

fn monoword() -> impl Strategy<Value = Monoword> {
    (letters(3), letters(3)).prop_map(|(y, x)| Monoword::new(y, x))
}

fn uelem() -> impl Strategy<Value = QLeavitt> {
    prop::collection::vec((monoword(), -2i64..=2), 1..4).prop_map(|ts| {
        QLeavitt::from_terms(ts.into_iter().map(|(m, c)| (m, Q::from_int(c))))
    })
}

#[derive(Clone, Copy, PartialEq)]
enum Sym {
    Y(u32),
    X(u32),
}

/// Rewrites adjacent `x_i y_j` pairs in the flat letter sequence until
/// none remain; `None` when some pair mismatches.
fn cancel(a: &Monoword, b: &Monoword) -> Option<Monoword> {
    let mut seq: Vec<Sym> = Vec::new();
    for m in [a, b] {
        seq.extend(m.y.letters().iter().map(|&l| Sym::Y(l)));
        seq.extend(m.x.letters().iter().map(|&l| Sym::X(l)));
    }
    while let Some(p) = (0..seq.len().saturating_sub(1))
        .find(|&p| matches!((seq[p], seq[p + 1]), (Sym::X(_), Sym::Y(_))))
    {
        let (Sym::X(i), Sym::Y(j)) = (seq[p], seq[p + 1]) else {
            unreachable!()
        };
        if i != j {
            return None;
        }
        seq.drain(p..p + 2);
    }
    let split = seq.iter().position(|s| matches!(s, Sym::X(_))).unwrap_or(seq.len());
    let unwrap = |s: &Sym| match *s {
        Sym::Y(l) | Sym::X(l) => l,
    };
    Some(Monoword::new(
        seq[..split].iter().map(unwrap).collect::<Vec<_>>(),
        seq[split..].iter().map(unwrap).collect::<Vec<_>>(),
    ))
}

fn reduced(a: &QLeavitt, n: u32) -> bool {
    a.terms()
        .all(|(m, _)| !(m.y.last() == Some(n) && m.x.first() == Some(n)))
}

#[test]
fn e_matches_skew_idempotent() {
    for n in 1..5 {
        assert!(to_skew(&e_n::<Q>(n)).equals(&e_upto(n - 1)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn monowords_close_under_products(a in monoword(), b in monoword()) {
        prop_assert_eq!(monoword_mul(&a, &b), cancel(&a, &b));
    }

    #[test]
    fn normal_form_is_confluent(a in uelem()) {
        let small = v_normal_form_with(&a, N, RewriteOrder::SmallestFirst);
        let large = v_normal_form_with(&a, N, RewriteOrder::LargestFirst);
        prop_assert!(small == large);
        prop_assert!(reduced(small.as_u(), N));
        prop_assert!(v_normal_form_with(small.as_u(), N, RewriteOrder::LargestFirst) == small);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn associative(a in uelem(), b in uelem(), c in uelem()) {
        prop_assert!(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn skew_translation_is_a_homomorphism(a in uelem(), b in uelem()) {
        prop_assert!(to_skew(&a.mul(&b)).equals(&to_skew(&a).mul(&to_skew(&b))));
        prop_assert!(from_skew(&to_skew(&a)) == a);
    }

    #[test]
    fn v_witnesses_are_sound(a in uelem()) {
        match v_witness(&a, N) {
            Ok(cert) => {
                prop_assert!(cert.check_v(&a, N));
                prop_assert!(cert.product.is_one());
            }
            Err(LeavittError::InIdeal(_)) => prop_assert!(v_member(&a, N)),
            Err(LeavittError::DegreeCap(_)) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn uinf_witnesses_are_sound(a in uelem()) {
        match uinf_witness(&a, N) {
            Ok(cert) => prop_assert!(cert.check_u(&a)),
            Err(_) => prop_assert!(a.is_zero()),
        }
    }
}

#[test]
fn relation_holds_in_v() {
    let sum = (1..=N).fold(QLeavitt::zero(), |acc, i| {
        acc.add(&QLeavitt::y(i).mul(&QLeavitt::x(i)))
    });
    assert!(v_normal_form_with(&sum, N, RewriteOrder::SmallestFirst).is_one());
    let w = QLeavitt::y_word(Word(vec![1, 2])).mul(&QLeavitt::x_word(Word(vec![2, 1])));
    assert!(!v_member(&w, N));
    assert!(v_member(&e_n(N).mul(&w), N));
    assert_eq!(Q::from_int(1), QLeavitt::x(1).mul(&QLeavitt::y(1)).coeff(&Monoword::one()));
}
