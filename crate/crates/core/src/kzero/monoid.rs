use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::{
    abelian_quotient, graded_lex, grothendieck_group, AbGroup, KZeroError, MonoidPresentation,
};

/// The elements of a finite presented monoid as normal forms, with its
/// addition table. Element `0` is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidTable {
    pub elements: Vec<Vec<u64>>,
    pub sum: Vec<Vec<usize>>,
    /// Index of each generator's normal form.
    pub generators: Vec<usize>,
}

impl MonoidTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, v: &[u64]) -> Option<usize> {
        self.elements.iter().position(|e| e == v)
    }
}

fn rules(p: &MonoidPresentation) -> Result<&[(Vec<u64>, Vec<u64>)], KZeroError> {
    if p.relations.len() > 1 && !p.asserted_confluent {
        return Err(KZeroError::NotOrientable(p.relations.len()));
    }
    Ok(&p.relations)
}

/// Rewrites with `lhs → rhs`; each step is graded-lex decreasing, so this
/// terminates.
fn normal_form(rules: &[(Vec<u64>, Vec<u64>)], mut v: Vec<u64>) -> Vec<u64> {
    'outer: loop {
        for (l, r) in rules {
            if v.iter().zip(l).all(|(a, b)| a >= b) {
                for ((x, a), b) in v.iter_mut().zip(l).zip(r) {
                    *x = *x - a + b;
                }
                continue 'outer;
            }
        }
        return v;
    }
}

fn add(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn explore(
    p: &MonoidPresentation,
    rules: &[(Vec<u64>, Vec<u64>)],
    bound: usize,
) -> (Vec<Vec<u64>>, bool) {
    let k = p.rank();
    let unit = |i: usize| (0..k).map(|j| u64::from(i == j)).collect::<Vec<u64>>();
    let zero = vec![0; k];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut order = vec![zero.clone()];
    let mut queue = VecDeque::from([zero]);
    while let Some(v) = queue.pop_front() {
        for i in 0..k {
            let w = normal_form(rules, add(&v, &unit(i)));
            if seen.insert(w.clone()) {
                if order.len() == bound {
                    return (order, true);
                }
                order.push(w.clone());
                queue.push_back(w);
            }
        }
    }
    (order, false)
}

/// All elements of the presented monoid, if there are at most `bound`.
///
/// A single relation is oriented from its graded-lex larger side, which is
/// always confluent; more relations require
/// [`MonoidPresentation::assert_confluent`].
pub fn monoid_enumerate(p: &MonoidPresentation, bound: usize) -> Result<MonoidTable, KZeroError> {
    let rules = rules(p)?;
    let (mut elements, overflow) = explore(p, rules, bound);
    if overflow {
        return Err(KZeroError::TooLarge {
            bound,
            partial: elements.len(),
        });
    }
    elements.sort_by(|a, b| graded_lex(a, b));
    let index: BTreeMap<&Vec<u64>, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let sum = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| index[&normal_form(rules, add(a, b))])
                .collect()
        })
        .collect();
    let k = p.rank();
    let generators = (0..k)
        .map(|i| {
            let g = normal_form(rules, (0..k).map(|j| u64::from(i == j)).collect());
            index[&g]
        })
        .collect();
    Ok(MonoidTable {
        elements,
        sum,
        generators,
    })
}

/// Shape of `𝒱`-style monoids: is it `{0} ⊔ G` for a group `G`, and is
/// `G` the Grothendieck group?
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidShapeReport {
    pub elements: usize,
    /// The monoid exceeded the bound; flags then describe the explored part.
    pub overflow: bool,
    pub conical: Option<bool>,
    pub simple: Option<bool>,
    pub nonzero_part_is_group: Option<bool>,
    pub group: Option<AbGroup>,
    pub grothendieck: AbGroup,
    pub matches_grothendieck: Option<bool>,
}

pub fn analyze_pisr_shape(
    p: &MonoidPresentation,
    bound: usize,
) -> Result<MonoidShapeReport, KZeroError> {
    let k0 = grothendieck_group(p)?;
    let table = match monoid_enumerate(p, bound) {
        Ok(t) => t,
        Err(KZeroError::TooLarge { .. }) => return partial_report(p, bound, k0),
        Err(e) => return Err(e),
    };
    let n = table.len();
    let s = &table.sum;
    let conical = (0..n).all(|x| (0..n).all(|y| s[x][y] != 0 || (x == 0 && y == 0)));
    // y ≤ z iff z = y + w for some w.
    let above: Vec<BTreeSet<usize>> = (0..n).map(|y| s[y].iter().copied().collect()).collect();
    let simple = (1..n).all(|x| {
        let mut multiples = BTreeSet::new();
        let mut cur = x;
        while multiples.insert(cur) {
            cur = s[cur][x];
        }
        (1..n).all(|y| multiples.iter().any(|m| above[y].contains(m)))
    });
    let group = nonzero_group(&table)?;
    let matches = group.as_ref().map(|g| {
        g.order().is_some()
            && k0.order() == g.order()
            && g.invariant_factors == k0.invariant_factors
    });
    Ok(MonoidShapeReport {
        elements: n,
        overflow: false,
        conical: Some(conical),
        simple: Some(simple),
        nonzero_part_is_group: Some(group.is_some()),
        group,
        grothendieck: k0,
        matches_grothendieck: matches,
    })
}

/// The nonzero elements as a group via its Cayley presentation, if they
/// form one.
fn nonzero_group(t: &MonoidTable) -> Result<Option<AbGroup>, KZeroError> {
    let n = t.len();
    let s = &t.sum;
    if n < 2 {
        return Ok(None);
    }
    let Some(f) = (1..n).find(|&f| (1..n).all(|x| s[f][x] == x)) else {
        return Ok(None);
    };
    let closed = (1..n).all(|x| (1..n).all(|y| s[x][y] != 0));
    let inverses = (1..n).all(|x| (1..n).any(|y| s[x][y] == f));
    if !closed || !inverses {
        return Ok(None);
    }
    let m = n - 1;
    let mut rows = BTreeSet::new();
    for x in 1..n {
        for y in x..n {
            let mut r = vec![0i128; m];
            r[x - 1] += 1;
            r[y - 1] += 1;
            r[s[x][y] - 1] -= 1;
            rows.insert(r);
        }
    }
    let rows: Vec<Vec<i128>> = rows.into_iter().collect();
    Ok(Some(abelian_quotient(&rows, m)?))
}

/// Bounded evidence for an infinite (or too large) monoid: conicality over
/// the explored pairs, and the absence of a nonzero idempotent among them.
fn partial_report(
    p: &MonoidPresentation,
    bound: usize,
    k0: AbGroup,
) -> Result<MonoidShapeReport, KZeroError> {
    let rules = rules(p)?;
    let (elements, _) = explore(p, rules, bound);
    let zero = vec![0; p.rank()];
    let conical = elements.iter().all(|a| {
        elements
            .iter()
            .all(|b| normal_form(rules, add(a, b)) != zero || (*a == zero && *b == zero))
    });
    let idempotent = elements
        .iter()
        .any(|a| *a != zero && normal_form(rules, add(a, a)) == *a);
    Ok(MonoidShapeReport {
        elements: elements.len(),
        overflow: true,
        conical: Some(conical),
        simple: None,
        nonzero_part_is_group: if idempotent { None } else { Some(false) },
        group: None,
        grothendieck: k0,
        matches_grothendieck: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(s: &str) -> MonoidPresentation {
        MonoidPresentation::parse(s).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let t = monoid_enumerate(&pres("g | 3g = g"), 10).unwrap();
        assert_eq!(t.elements, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(t.sum[2][1], 1);

        let t = monoid_enumerate(&pres("g | 2g = g"), 10).unwrap();
        assert_eq!(t.elements, vec![vec![0], vec![1]]);
        assert_eq!(t.sum[1][1], 1);

        assert!(matches!(
            monoid_enumerate(&pres("g |"), 10),
            Err(KZeroError::TooLarge {
                bound: 10,
                partial: 10
            })
        ));
        assert_eq!(
            monoid_enumerate(&pres("a, b | 2a = a, 2b = b"), 10).unwrap_err(),
            KZeroError::NotOrientable(2)
        );
        let t = monoid_enumerate(&pres("a, b | 2a = a, 2b = b").assert_confluent(), 10).unwrap();
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn shape_of_cyclic_family() {
        let r = analyze_pisr_shape(&pres("g | 4g = g"), 64).unwrap();
        assert_eq!(r.conical, Some(true));
        assert_eq!(r.simple, Some(true));
        assert_eq!(r.nonzero_part_is_group, Some(true));
        assert_eq!(r.group.as_ref().unwrap().invariant_factors, vec![3]);
        assert_eq!(r.matches_grothendieck, Some(true));
    }

    #[test]
    fn shape_of_infinite_monoids() {
        let r = analyze_pisr_shape(&pres("g |"), 16).unwrap();
        assert!(r.overflow);
        assert_eq!(r.nonzero_part_is_group, Some(false));

        let r = analyze_pisr_shape(&pres("g, p | g = 2g + p"), 32).unwrap();
        assert!(r.overflow);
        assert_eq!(r.grothendieck.invariant_factors, vec![0]);
    }
}
