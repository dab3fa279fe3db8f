use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{needs_parens, split_sign};
use super::{Field, MPoly, Modular};

/// A rational function in `t1, ..., tr` over the base field `F`.
///
/// Stored as a gcd-reduced quotient with a monic denominator, so equal
/// values have identical representations.
#[derive(Clone, PartialEq)]
pub struct RatFunc<F> {
    num: MPoly<F>,
    den: MPoly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: MPoly<F>, den: MPoly<F>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = den.as_constant() {
            let inv = c.inverse().unwrap();
            return Some(RatFunc {
                num: num.scale(&inv),
                den: MPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading_coefficient().cloned().unwrap();
        let inv = lc.inverse().unwrap();
        Some(RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: MPoly<F>) -> Self {
        RatFunc {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    /// The indeterminate `t_{var+1}`.
    pub fn var(var: usize) -> Self {
        Self::from_poly(MPoly::var(var))
    }

    pub fn numerator(&self) -> &MPoly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly<F> {
        &self.den
    }

    /// The base-field value when this is a constant.
    pub fn as_constant(&self) -> Option<F> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        self.num.max_var().max(self.den.max_var())
    }
}

impl<F: Field> Zero for RatFunc<F> {
    fn zero() -> Self {
        Self::from_poly(MPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RatFunc<F> {
    fn one() -> Self {
        Self::from_poly(MPoly::one())
    }
}

impl<F: Field> Add for RatFunc<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return RatFunc::new(self.num.add(&rhs.num), self.den).unwrap();
        }
        let g = self.den.gcd(&rhs.den);
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = rhs.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d2).add(&rhs.num.mul(&d1));
        RatFunc::new(num, d1.mul(&rhs.den)).unwrap()
    }
}

impl<F: Field> Neg for RatFunc<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl<F: Field> Sub for RatFunc<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Mul for RatFunc<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&rhs.num));
        }
        RatFunc::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).unwrap()
    }
}

impl<F: Field> Div for RatFunc<F> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero rational function")
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            RatFunc::new(self.den.clone(), self.num.clone())
        }
    }

    fn from_int(n: i64) -> Self {
        Self::constant(F::from_int(n))
    }

    fn modular_image(&self) -> Option<Modular> {
        let num = self.num.modular_image()?;
        let den = self.den.modular_image()?;
        Some(num * den.inverse()?)
    }

    fn normalize_vector(v: &mut [Self]) {
        let mut lcm = MPoly::one();
        for x in v.iter().filter(|x| !x.den.is_one()) {
            let g = lcm.gcd(&x.den);
            lcm = lcm.mul(&x.den.div_exact(&g).unwrap());
        }
        let mut nums: Vec<MPoly<F>> = v
            .iter()
            .map(|x| {
                if lcm.is_one() {
                    x.num.clone()
                } else {
                    x.num.mul(&lcm.div_exact(&x.den).unwrap())
                }
            })
            .collect();
        let g = nums
            .iter()
            .filter(|p| !p.is_zero())
            .fold(MPoly::zero(), |g, p| if g.is_one() { g } else { g.gcd(p) });
        if g.is_zero() {
            return;
        }
        if !g.is_one() {
            for p in nums.iter_mut() {
                *p = p.div_exact(&g).unwrap();
            }
        }
        let coeffs: Vec<F> = nums.iter().flat_map(|p| p.coefficients()).collect();
        if let Some(c) = F::primitive_factor(&coeffs) {
            for p in nums.iter_mut() {
                *p = p.scale(&c);
            }
        }
        for (x, p) in v.iter_mut().zip(nums) {
            *x = RatFunc::from_poly(p);
        }
    }

    fn is_compound(&self) -> bool {
        !self.den.is_one() || self.num.num_terms() > 1 || self.to_string().starts_with('-')
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = self.num.to_string();
        let den = self.den.to_string();
        let (neg, body) = split_sign(&num);
        let sign = if neg { "-" } else { "" };
        let body = if needs_parens(&body) {
            format!("({body})")
        } else {
            body
        };
        let den = if needs_parens(&den) || den.contains('*') {
            format!("({den})")
        } else {
            den
        };
        write!(f, "{sign}{body}/{den}")
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
