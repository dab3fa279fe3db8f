//! Heuristic gcd of univariate rational polynomials via integer gcds at a
//! large evaluation point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const TRIES: usize = 6;

/// Primitive integer polynomial with the same roots as `a`.
fn primitive(a: &[BigRational]) -> Vec<BigInt> {
    let den = a
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|c| c / &content * &sign).collect()
}

fn evaluate(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Symmetric `x`-adic digits of `v`, lowest first.
fn digits(mut v: BigInt, x: &BigInt) -> Vec<BigInt> {
    let half = x / 2;
    let mut out = Vec::new();
    while !v.is_zero() {
        let mut d = v.mod_floor(x);
        if d > half {
            d -= x;
        }
        v = (v - &d) / x;
        out.push(d);
    }
    out
}

fn divides(g: &[BigInt], a: &[BigInt]) -> bool {
    let lc = g.last().unwrap();
    let mut r = a.to_vec();
    while r.len() >= g.len() {
        let top = r.last().unwrap();
        if !(top % lc).is_zero() {
            return false;
        }
        let f = top / lc;
        let shift = r.len() - g.len();
        for (k, gk) in g.iter().enumerate() {
            r[k + shift] -= &f * gk;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r.is_empty()
}

/// Monic gcd of two nonzero polynomials given lowest degree first, or
/// `None` when the heuristic gives up.
pub(crate) fn gcd(a: &[BigRational], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let a = primitive(a);
    let b = primitive(b);
    if a.len() == 1 || b.len() == 1 {
        return Some(vec![BigRational::one()]);
    }
    let norm = |p: &[BigInt]| p.iter().map(|c| c.abs()).max().unwrap();
    let mut x = norm(&a).min(norm(&b)) * 2 + 29;
    for _ in 0..TRIES {
        let g = evaluate(&a, &x).gcd(&evaluate(&b, &x));
        let mut cand = digits(g, &x);
        if !cand.is_empty() {
            let content = cand.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
            for c in cand.iter_mut() {
                *c = &*c / &content;
            }
            if divides(&cand, &a) && divides(&cand, &b) {
                let lc = BigRational::from_integer(cand.last().unwrap().clone());
                return Some(
                    cand.into_iter()
                        .map(|c| BigRational::from_integer(c) / &lc)
                        .collect(),
                );
            }
        }
        x = x * 73794 / 27011;
    }
    None
}
