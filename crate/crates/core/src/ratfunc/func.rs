use std::fmt;

use num_traits::{One, Zero};

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};

/// Quotient of polynomials. Not reduced; equality is by cross-multiplication.
#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a constant denominator is folded into the numerator
        Ok(match den.as_constant() {
            Some(c) => RatFunc { num: num.scale(&c.recip()), den: MultiPoly::one() },
            None => RatFunc { num, den },
        })
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::constant(c).into()
    }

    pub fn generator(i: usize) -> Self {
        MultiPoly::generator(i).into()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn generator_count(&self) -> usize {
        self.num.generator_count().max(self.den.generator_count())
    }

    /// The value if the function is constant, i.e. `num = c * den`.
    pub fn as_constant(&self) -> Option<Rational> {
        let Some((m, a)) = self.num.leading() else {
            return Some(Rational::zero());
        };
        let (n, b) = self.den.leading()?;
        if m != n {
            return None;
        }
        let c = a / b;
        (self.den.scale(&c) == self.num).then_some(c)
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFunc { num: self.num.add(&other.num), den: self.den.clone() };
        }
        RatFunc { num: self.num.mul(&other.den).add(&other.num.mul(&self.den)), den: self.den.mul(&other.den) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero product")
    }

    pub fn inv(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        RatFunc::new(base.num.pow(e), base.den.pow(e))
    }

    /// Ring substitution applied to numerator and denominator.
    pub fn substitute(&self, images: &dyn Fn(usize) -> MultiPoly) -> Result<Self> {
        RatFunc::new(self.num.substitute(images), self.den.substitute(images))
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc { num: p, den: MultiPoly::one() }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &MultiPoly| {
            let s = p.to_string();
            if p.terms().count() > 1 || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        match self.den.as_constant() {
            Some(c) if c.is_one() => write!(f, "{}", self.num),
            Some(c) => write!(f, "{}/{}", wrap(&self.num), fmt_rational(&c)),
            None => write!(f, "{}/{}", wrap(&self.num), wrap(&self.den)),
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
