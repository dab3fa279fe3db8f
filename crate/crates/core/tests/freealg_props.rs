use proptest::prelude::*;

use pisr::field::Field;
use pisr::{QPoly, Word, Q};

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0u32..3, 0..4).prop_map(Word)
}

fn poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((word(), -3i64..=3), 0..5).prop_map(|terms| {
        QPoly::from_terms(terms.into_iter().map(|(w, c)| (w, Q::from_int(c))))
    })
}

/// Coefficient of `w` in `a·b`, summing over all splittings of `w`.
fn product_coeff(a: &QPoly, b: &QPoly, w: &Word) -> Q {
    (0..=w.len()).fold(Q::from_int(0), |acc, k| {
        acc + a.coeff(&w.prefix(k)) * b.coeff(&w.suffix(k))
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert!(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.add(&b).mul(&c) == a.mul(&c).add(&b.mul(&c)));
        prop_assert!(a.add(&b) == b.add(&a));
        prop_assert!(a.mul(&QPoly::one()) == a);
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn products_match_convolution(a in poly(), b in poly()) {
        let ab = a.mul(&b);
        for (w, c) in ab.terms() {
            prop_assert_eq!(c.clone(), product_coeff(&a, &b, w));
        }
        for (u, _) in a.terms() {
            for (v, _) in b.terms() {
                let w = u.concat(v);
                prop_assert_eq!(ab.coeff(&w), product_coeff(&a, &b, &w));
            }
        }
    }

    #[test]
    fn order_and_degree_add(a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (sa, sb, sab) = (a.stats(), b.stats(), a.mul(&b).stats());
        prop_assert_eq!(sab.order, Some(sa.order.unwrap() + sb.order.unwrap()));
        prop_assert_eq!(sab.degree, Some(sa.degree.unwrap() + sb.degree.unwrap()));
    }

    #[test]
    fn delta_is_a_tau_derivation(a in poly(), b in poly(), i in 0u32..3) {
        let lhs = a.mul(&b).delta(i);
        let rhs = a.delta(i).scale(&b.tau()).add(&a.mul(&b.delta(i)));
        prop_assert!(lhs == rhs);
        prop_assert_eq!(a.mul(&b).tau(), a.tau() * b.tau());
    }
}
