//! Coefficients: rationals and elements `a + b*sqrt(d)` of a real quadratic field.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::oag::surd;
use crate::rational::{exact_rational_root, fmt_rational, Rational};

/// A coefficient. `Quadratic` always has `b != 0`; constructors normalise.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Coefficient {
    Rational(Rational),
    Quadratic { a: Rational, b: Rational, d: u64 },
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Coefficient::Rational(Rational::one())
    }

    pub fn quadratic(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() {
            Coefficient::Rational(a)
        } else {
            Coefficient::Quadratic { a, b, d }
        }
    }

    pub fn parts(&self) -> (Rational, Rational, Option<u64>) {
        match self {
            Coefficient::Rational(q) => (q.clone(), Rational::zero(), None),
            Coefficient::Quadratic { a, b, d } => (a.clone(), b.clone(), Some(*d)),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Coefficient::Rational(q) => Some(q),
            Coefficient::Quadratic { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coefficient::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coefficient::Rational(q) if q.is_one())
    }

    fn join(x: Option<u64>, y: Option<u64>) -> Option<u64> {
        match (x, y) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "coefficients from different quadratic fields");
                Some(a)
            }
            (a, b) => a.or(b),
        }
    }

    fn build(a: Rational, b: Rational, d: Option<u64>) -> Self {
        match d {
            Some(d) => Coefficient::quadratic(a, b, d),
            None => Coefficient::Rational(a),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a1, b1, d1) = self.parts();
        let (a2, b2, d2) = other.parts();
        Self::build(a1 + a2, b1 + b2, Self::join(d1, d2))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            Coefficient::Rational(q) => Coefficient::Rational(-q),
            Coefficient::Quadratic { a, b, d } => Coefficient::Quadratic { a: -a, b: -b, d: *d },
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (Coefficient::Rational(x), Coefficient::Rational(y)) = (self, other) {
            return Coefficient::Rational(x * y);
        }
        let (a1, b1, d1) = self.parts();
        let (a2, b2, d2) = other.parts();
        let d = Self::join(d1, d2);
        let dq = Rational::from_integer(d.unwrap().into());
        Self::build(&a1 * &a2 + &b1 * &b2 * dq, a1 * b2 + b1 * a2, d)
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            Coefficient::Rational(q) if q.is_zero() => Err(Error::DivisionByZero),
            Coefficient::Rational(q) => Ok(Coefficient::Rational(q.recip())),
            Coefficient::Quadratic { a, b, d } => {
                let norm = a * a - b * b * Rational::from_integer((*d).into());
                Ok(Coefficient::quadratic(a / &norm, -b / &norm, *d))
            }
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.mul(&Coefficient::Rational(q.clone()))
    }

    pub fn signum(&self) -> Ordering {
        match self {
            Coefficient::Rational(q) => q.cmp(&Rational::zero()),
            Coefficient::Quadratic { a, b, d } => {
                // clear denominators, then use the integer sign rule
                let l = num_integer::lcm(a.denom().clone(), b.denom().clone());
                let ai = (a * Rational::from_integer(l.clone())).to_integer();
                let bi = (b * Rational::from_integer(l)).to_integer();
                surd::sign(&ai, &bi, *d)
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Coefficient::one(), |acc, _| acc.mul(self))
    }

    /// Square root in `Q(sqrt(d))` (or `Q` when `d` is `None`), choosing the positive root.
    pub fn sqrt_in(&self, d: Option<u64>) -> Option<Self> {
        if self.signum() == Ordering::Less {
            return None;
        }
        if self.is_zero() {
            return Some(Coefficient::zero());
        }
        let (a, b, _) = self.parts();
        let root = if b.is_zero() {
            if let Some(r) = exact_rational_root(&a, 2) {
                Some(Coefficient::Rational(r))
            } else {
                let d = d?;
                // a = d*y^2
                exact_rational_root(&(&a / Rational::from_integer(d.into())), 2)
                    .map(|y| Coefficient::quadratic(Rational::zero(), y, d))
            }
        } else {
            let d = d?;
            let dq = Rational::from_integer(d.into());
            let m = exact_rational_root(&(&a * &a - &b * &b * &dq), 2)?;
            let two = Rational::from_integer(2.into());
            [(&a + &m) / &two, (&a - &m) / &two].into_iter().find_map(|x2| {
                let x = exact_rational_root(&x2, 2).filter(|x| !x.is_zero())?;
                let y = &b / (&two * &x);
                let c = Coefficient::quadratic(x, y, d);
                (c.mul(&c) == *self).then_some(c)
            })
        }?;
        Some(root.abs())
    }

    /// `n`-th root inside the coefficient field, positive for even `n`.
    ///
    /// Powers of two go through repeated square roots; the odd part is handled
    /// for rational values (an odd root of a rational lying in `Q(sqrt(d))` is
    /// rational). Odd roots of irrational quadratic values are not supported.
    pub fn nth_root_in(&self, n: u32, d: Option<u64>) -> Result<Option<Self>> {
        if n == 0 {
            return Err(Error::InvalidArgument("root of order zero".into()));
        }
        let mut n = n;
        let mut c = self.clone();
        while n.is_multiple_of(2) {
            match c.sqrt_in(d) {
                Some(r) => c = r,
                None => return Ok(None),
            }
            n /= 2;
        }
        if n == 1 {
            return Ok(Some(c));
        }
        match &c {
            Coefficient::Rational(q) => Ok(exact_rational_root(q, n).map(Coefficient::Rational)),
            Coefficient::Quadratic { .. } => {
                Err(Error::Unrepresentable(format!("odd root of order {n} of {c} in a quadratic field")))
            }
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(q) => write!(f, "{}", fmt_rational(q)),
            Coefficient::Quadratic { a, b, .. } => {
                write!(f, "q({},{})", fmt_rational(a), fmt_rational(b))
            }
        }
    }
}

impl From<Rational> for Coefficient {
    fn from(q: Rational) -> Self {
        Coefficient::Rational(q)
    }
}
