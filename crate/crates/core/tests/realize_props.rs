use proptest::prelude::*;
use rand::Rng;

use pisr::realize::{
    build_generators, plan_chain, verify_generators, CyclicGroup, CyclicTag, HomSpec,
};
use pisr::selftest::{rng, SuiteRng};
use pisr::Q;

const TAGS: [u64; 4] = [2, 3, 4, 0];

fn tag(m: u64) -> CyclicTag {
    CyclicTag::new(m).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A multiplier giving a homomorphism `ℤ_n → ℤ_m`.
fn legal_mult(r: &mut SuiteRng, n: u64, m: u64) -> i64 {
    match (n, m) {
        (0, _) => r.gen_range(-3..=3),
        (_, 0) => 0,
        (n, m) => (m / gcd(n, m)) as i64 * r.gen_range(0..=3),
    }
}

fn reduce(m: u64, x: i64) -> i64 {
    if m == 0 {
        x
    } else {
        x.rem_euclid(m as i64)
    }
}

/// Groups, maps and the pushed-forward units of a random legal chain.
fn random_chain(seed: u64) -> (Vec<CyclicGroup>, Vec<Vec<Vec<i64>>>) {
    let mut r = rng(seed, 0);
    let len = r.gen_range(1..=4);
    let shapes: Vec<Vec<u64>> = (0..len)
        .map(|_| (0..r.gen_range(1..=2)).map(|_| TAGS[r.gen_range(0..4)]).collect())
        .collect();
    let mut unit: Vec<i64> = shapes[0].iter().map(|&m| reduce(m, r.gen_range(-3..=3))).collect();
    let mut groups = Vec::new();
    let mut maps = Vec::new();
    for t in 0..len {
        groups.push(CyclicGroup {
            factors: shapes[t].iter().map(|&m| tag(m)).collect(),
            unit: unit.clone(),
        });
        if t + 1 == len {
            break;
        }
        let map: Vec<Vec<i64>> = shapes[t + 1]
            .iter()
            .map(|&m| shapes[t].iter().map(|&n| legal_mult(&mut r, n, m)).collect())
            .collect();
        unit = map
            .iter()
            .zip(&shapes[t + 1])
            .map(|(row, &m)| reduce(m, row.iter().zip(&unit).map(|(a, u)| a * u).sum()))
            .collect();
        maps.push(map);
    }
    (groups, maps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn planner_is_sound(seed in any::<u64>()) {
        let (groups, maps) = random_chain(seed);
        let plan = plan_chain(&groups, &maps).unwrap();
        prop_assert!(plan.reproduces(&maps));
        for (t, step) in plan.steps.iter().enumerate() {
            prop_assert_eq!(&step.sums, &groups[t + 1].unit);
            for c in &step.components {
                let m = groups[t + 1].factors[c.target].modulus();
                let u = groups[t].unit[c.source];
                prop_assert_eq!(c.class, reduce(m, c.spec.mult * u));
                prop_assert_eq!(c.adjusted, c.class == 0);
                prop_assert_eq!(c.case, c.spec.case());
            }
        }
    }

    #[test]
    fn planner_rejects_wrong_units(seed in any::<u64>()) {
        let (mut groups, maps) = random_chain(seed);
        prop_assume!(groups.len() > 1);
        let last = groups.last_mut().unwrap();
        let m = last.factors[0].modulus();
        last.unit[0] = reduce(m, last.unit[0] + 1);
        prop_assert!(plan_chain(&groups, &maps).is_err());
    }
}

#[test]
fn infinite_targets_verify() {
    for mult in -2..=0 {
        let spec = HomSpec::new(tag(0), tag(0), mult).unwrap();
        assert_eq!(spec.case(), 3);
        assert!(verify_generators(&build_generators::<Q>(&spec)).passed(), "{spec}");
    }
    for n in 2..=4 {
        let spec = HomSpec::new(tag(n), tag(0), 0).unwrap();
        assert_eq!(spec.case(), 4);
        assert!(verify_generators(&build_generators::<Q>(&spec)).passed(), "{spec}");
    }
}
