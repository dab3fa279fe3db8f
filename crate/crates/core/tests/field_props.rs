use num_traits::One;
use proptest::prelude::*;

use pisr::field::{Field, MPoly};
use pisr::{Fp, Qt, Word, F7, Q};

fn q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn f7() -> impl Strategy<Value = F7> {
    (0i64..7).prop_map(Fp::new)
}

fn poly() -> impl Strategy<Value = MPoly<Q>> {
    prop::collection::vec(-3i64..=3, 1..=3).prop_map(|cs| {
        cs.iter().enumerate().fold(MPoly::zero(), |acc, (e, &c)| {
            let mut term = MPoly::constant(Q::from_int(c));
            for _ in 0..e {
                term = term.mul(&MPoly::var(0));
            }
            acc.add(&term)
        })
    })
}

fn qt() -> impl Strategy<Value = Qt> {
    (poly(), poly()).prop_map(|(n, d)| {
        let d = if d.is_zero() { MPoly::one() } else { d };
        Qt::new(n, d).unwrap()
    })
}

fn axioms<F: Field>(a: F, b: F, c: F) -> Result<(), TestCaseError> {
    prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
    prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
    prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    prop_assert_eq!(
        a.clone() * (b.clone() + c.clone()),
        a.clone() * b.clone() + a.clone() * c.clone()
    );
    prop_assert_eq!(a.clone() - a.clone(), F::zero());
    prop_assert_eq!(a.clone() * F::one(), a.clone());
    match a.inverse() {
        Some(inv) => prop_assert_eq!(a * inv, F::one()),
        None => prop_assert!(a.is_zero()),
    }
    Ok(())
}

proptest! {
    #[test]
    fn rational_axioms(a in q(), b in q(), c in q()) {
        axioms(a, b, c)?;
    }

    #[test]
    fn prime_field_axioms(a in f7(), b in f7(), c in f7()) {
        axioms(a, b, c)?;
    }

    #[test]
    fn rational_function_axioms(a in qt(), b in qt(), c in qt()) {
        axioms(a, b, c)?;
    }

    #[test]
    fn rational_functions_are_canonical(a in qt()) {
        let again = Qt::new(a.numerator().clone(), a.denominator().clone()).unwrap();
        prop_assert!(again == a);
        let lc = a.denominator().leading_coefficient().cloned();
        prop_assert!(lc.is_some_and(|c| c.is_one()));
    }

    #[test]
    fn equal_fractions_are_identical(n in poly(), d in poly(), k in poly()) {
        prop_assume!(!d.is_zero() && !k.is_zero());
        let plain = Qt::new(n.clone(), d.clone()).unwrap();
        let scaled = Qt::new(n.mul(&k), d.mul(&k)).unwrap();
        prop_assert!(plain == scaled);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reverse_is_an_involution(letters in prop::collection::vec(0u32..5, 0..12)) {
        let w = Word(letters);
        prop_assert_eq!(w.reverse().reverse(), w);
    }

    #[test]
    fn concatenation_is_associative(
        a in prop::collection::vec(0u32..4, 0..5),
        b in prop::collection::vec(0u32..4, 0..5),
        c in prop::collection::vec(0u32..4, 0..5),
    ) {
        let (a, b, c) = (Word(a), Word(b), Word(c));
        prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
        prop_assert_eq!(a.concat(&Word::empty()), a.clone());
        prop_assert_eq!(a.concat(&b).reverse(), b.reverse().concat(&a.reverse()));
    }
}
