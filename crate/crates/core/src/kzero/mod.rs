//! Finitely presented commutative monoids, their Grothendieck groups, and
//! the shape checks for monoids of the form `{0} ⊔ G`.

mod monoid;
mod snf;

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

pub use monoid::{analyze_pisr_shape, monoid_enumerate, MonoidShapeReport, MonoidTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KZeroError {
    #[error("cannot parse presentation: {0}")]
    Parse(String),
    #[error("integer overflow in normal form computation")]
    Overflow,
    #[error("monoid has more than {bound} elements")]
    TooLarge { bound: usize, partial: usize },
    #[error("{0} relations need an asserted confluent orientation")]
    NotOrientable(usize),
}

/// A relation `Σ a_i g_i = Σ b_i g_i`.
pub type Relation = (Vec<u64>, Vec<u64>);

/// Compares by total degree, then lexicographically.
pub(crate) fn graded_lex(a: &[u64], b: &[u64]) -> Ordering {
    let sa: u64 = a.iter().sum();
    let sb: u64 = b.iter().sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

/// `⟨g_1..g_k | relations⟩`. Each relation is stored with its graded-lex
/// larger side first; the list is sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidPresentation {
    generators: Vec<String>,
    relations: Vec<Relation>,
    asserted_confluent: bool,
}

impl MonoidPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<Relation>) -> Result<Self, KZeroError> {
        let k = generators.len();
        let mut rels = Vec::new();
        for (l, r) in relations {
            if l.len() != k || r.len() != k {
                return Err(KZeroError::Parse(format!(
                    "relation vectors must have length {k}"
                )));
            }
            match graded_lex(&l, &r) {
                Ordering::Equal => {}
                Ordering::Greater => rels.push((l, r)),
                Ordering::Less => rels.push((r, l)),
            }
        }
        rels.sort();
        rels.dedup();
        Ok(MonoidPresentation {
            generators,
            relations: rels,
            asserted_confluent: false,
        })
    }

    /// Parses text such as `I | 3I = I` or `I, P | I = 2I + P`.
    pub fn parse(text: &str) -> Result<Self, KZeroError> {
        let (gens, rels) = text.split_once('|').unwrap_or((text, ""));
        let generators: Vec<String> = gens
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect();
        if generators.is_empty() {
            return Err(KZeroError::Parse("no generators".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if !g.chars().next().is_some_and(char::is_alphabetic)
                || !g.chars().all(|c| c.is_alphanumeric() || c == '_')
            {
                return Err(KZeroError::Parse(format!("bad generator name `{g}`")));
            }
            if generators[..i].contains(g) {
                return Err(KZeroError::Parse(format!("duplicate generator `{g}`")));
            }
        }
        let mut relations = Vec::new();
        for rel in rels
            .split([',', ';'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
        {
            let (l, r) = rel
                .split_once('=')
                .ok_or_else(|| KZeroError::Parse(format!("relation `{rel}` has no `=`")))?;
            relations.push((parse_sum(l, &generators)?, parse_sum(r, &generators)?));
        }
        Self::new(generators, relations)
    }

    /// Lets [`monoid_enumerate`] use several relations, each oriented from
    /// its graded-lex larger side; the caller vouches for confluence.
    pub fn assert_confluent(mut self) -> Self {
        self.asserted_confluent = true;
        self
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Renders `v` as `2I + P`.
    pub fn render(&self, v: &[u64]) -> String {
        let parts: Vec<String> = v
            .iter()
            .zip(&self.generators)
            .filter(|(c, _)| **c > 0)
            .map(|(c, g)| {
                if *c == 1 {
                    g.clone()
                } else {
                    format!("{c}{g}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for MonoidPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|(l, r)| format!("{} = {}", self.render(l), self.render(r)))
            .collect();
        write!(f, "{} | {}", self.generators.join(", "), rels.join(", "))
    }
}

fn parse_sum(text: &str, generators: &[String]) -> Result<Vec<u64>, KZeroError> {
    let mut v = vec![0u64; generators.len()];
    for term in text.split('+').map(str::trim) {
        if term.is_empty() {
            return Err(KZeroError::Parse(format!(
                "empty term in `{}`",
                text.trim()
            )));
        }
        let split = term
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(term.len());
        let (digits, name) = term.split_at(split);
        let name = name.trim().trim_start_matches('*').trim();
        let coeff: u64 = if digits.is_empty() {
            1
        } else {
            digits
                .parse()
                .map_err(|_| KZeroError::Parse(format!("bad coefficient in `{term}`")))?
        };
        if name.is_empty() {
            if coeff == 0 {
                continue;
            }
            return Err(KZeroError::Parse(format!("`{term}` names no generator")));
        }
        let idx = generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| KZeroError::Parse(format!("unknown generator `{name}`")))?;
        v[idx] = v[idx]
            .checked_add(coeff)
            .ok_or_else(|| KZeroError::Parse(format!("coefficient too large in `{term}`")))?;
    }
    Ok(v)
}

/// A finitely generated abelian group `⊕ ℤ/d_i` with `d_1 | d_2 | …`,
/// nontrivial factors only, `0` standing for `ℤ` and placed last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbGroup {
    pub invariant_factors: Vec<u64>,
    /// Coordinates of each generator; entries for finite factors are
    /// reduced into `0..d`.
    pub generator_images: Vec<Vec<i64>>,
}

impl AbGroup {
    /// `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        self.invariant_factors
            .iter()
            .try_fold(1u128, |acc, &d| (d != 0).then(|| acc * u128::from(d)))
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Coordinates of `Σ v_j g_j`.
    pub fn image(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i128; self.invariant_factors.len()];
        for (c, img) in v.iter().zip(&self.generator_images) {
            for (o, x) in out.iter_mut().zip(img) {
                *o += i128::from(*c) * i128::from(*x);
            }
        }
        out.iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &d)| reduce(x, d) as i64)
            .collect()
    }
}

fn reduce(x: i128, d: u64) -> i128 {
    if d == 0 {
        x
    } else {
        x.rem_euclid(i128::from(d))
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|&d| if d == 0 { "Z".into() } else { format!("Z/{d}") })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// `ℤ^k` modulo the lattice spanned by the rows of `relations`.
pub fn abelian_quotient(relations: &[Vec<i128>], k: usize) -> Result<AbGroup, KZeroError> {
    let s = snf::smith(relations, k)?;
    let mut factors = Vec::new();
    let mut cols = Vec::new();
    for t in 0..k {
        let d = s.diagonal.get(t).copied().unwrap_or(0);
        if d == 1 {
            continue;
        }
        factors.push(u64::try_from(d).map_err(|_| KZeroError::Overflow)?);
        cols.push(t);
    }
    let mut images: Vec<Vec<i64>> = vec![Vec::new(); k];
    for (&d, &t) in factors.iter().zip(&cols) {
        let mut column: Vec<i128> = (0..k).map(|j| reduce(s.columns[j][t], d)).collect();
        if d == 0 && column.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            column.iter_mut().for_each(|x| *x = -*x);
        }
        for (img, x) in images.iter_mut().zip(column) {
            img.push(i64::try_from(x).map_err(|_| KZeroError::Overflow)?);
        }
    }
    // The diagonal is a divisibility chain with zeros last already, since
    // zero pivots only appear once the remaining block vanishes.
    Ok(AbGroup {
        invariant_factors: factors,
        generator_images: images,
    })
}

/// The universal group of the presented monoid.
pub fn grothendieck_group(p: &MonoidPresentation) -> Result<AbGroup, KZeroError> {
    let rows: Vec<Vec<i128>> = p
        .relations
        .iter()
        .map(|(l, r)| {
            l.iter()
                .zip(r)
                .map(|(&a, &b)| i128::from(a) - i128::from(b))
                .collect()
        })
        .collect();
    abelian_quotient(&rows, p.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_orients() {
        let p = MonoidPresentation::parse("I | 3I=I").unwrap();
        assert_eq!(p.relations(), &[(vec![3], vec![1])]);
        let p = MonoidPresentation::parse("I, P | I = 2I + P").unwrap();
        assert_eq!(p.relations(), &[(vec![2, 1], vec![1, 0])]);
        assert_eq!(p.to_string(), "I, P | 2I + P = I");
        assert!(MonoidPresentation::parse("g |")
            .unwrap()
            .relations()
            .is_empty());
        assert!(MonoidPresentation::parse("g | 2h = g").is_err());
        assert!(MonoidPresentation::parse("| g = g").is_err());
    }

    #[test]
    fn grothendieck_examples() {
        let g = grothendieck_group(&MonoidPresentation::parse("g | 3g = g").unwrap()).unwrap();
        assert_eq!(
            (g.invariant_factors, g.generator_images),
            (vec![2], vec![vec![1]])
        );

        let g =
            grothendieck_group(&MonoidPresentation::parse("g, p | g = 2g + p").unwrap()).unwrap();
        assert_eq!(g.invariant_factors, vec![0]);
        assert_eq!(g.generator_images, vec![vec![1], vec![-1]]);

        let g = grothendieck_group(&MonoidPresentation::parse("g |").unwrap()).unwrap();
        assert_eq!(
            (g.invariant_factors, g.generator_images),
            (vec![0], vec![vec![1]])
        );

        let g = grothendieck_group(&MonoidPresentation::parse("g | 2g = g").unwrap()).unwrap();
        assert!(g.is_trivial());
        assert_eq!(g.order(), Some(1));
    }

    #[test]
    fn leavitt_family() {
        for n in 2..=12u64 {
            let p = MonoidPresentation::parse(&format!("I | {n}I = I")).unwrap();
            let g = grothendieck_group(&p).unwrap();
            if n == 2 {
                assert!(g.is_trivial());
            } else {
                assert_eq!(g.invariant_factors, vec![n - 1]);
                assert_eq!(g.image(&[1]), vec![1]);
            }
        }
    }

    #[test]
    fn mixed_torsion_and_free() {
        let p = MonoidPresentation::parse("a, b, c | 2a = 0, 4b = 2a").unwrap();
        let g = grothendieck_group(&p).unwrap();
        assert_eq!(g.invariant_factors, vec![2, 4, 0]);
        assert_eq!(g.order(), None);
        assert_eq!(g.to_string(), "Z/2 x Z/4 x Z");
    }
}
