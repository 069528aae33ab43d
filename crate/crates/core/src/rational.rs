//! Small helpers around exact rationals: text form, integer roots, random draws.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::parse(0, format!("not a rational: {t:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// Exact `n`-th root of a non-negative integer, if there is one.
pub fn exact_int_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.sign() == Sign::Minus {
        return None;
    }
    let r = x.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
}

/// Exact `n`-th root of a rational. Negative inputs have a root only for odd `n`.
pub fn exact_rational_root(q: &Rational, n: u32) -> Option<Rational> {
    if q.is_zero() {
        return Some(Rational::zero());
    }
    if q.is_negative() {
        if n.is_multiple_of(2) {
            return None;
        }
        return exact_rational_root(&-q, n).map(|r| -r);
    }
    let num = exact_int_root(q.numer(), n)?;
    let den = exact_int_root(q.denom(), n)?;
    Some(Rational::new(num, den))
}

/// Floor of `a + b*sqrt(d)` for integers `a`, `b` and `d >= 2` square-free.
pub fn floor_surd(a: &BigInt, b: &BigInt, d: u64) -> BigInt {
    // floor(b*sqrt(d)) from the integer square root of b^2 d.
    let sq = b * b * BigInt::from(d);
    let r = sq.sqrt();
    let fb = if b.is_negative() {
        // b*sqrt(d) = -sqrt(sq), irrational unless b = 0.
        -r - BigInt::one()
    } else {
        r
    };
    a + fb
}

/// The rational of least denominator (then least absolute value) in the open
/// interval `(lo, hi)`, found by descending the Stern–Brocot tree.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Option<Rational> {
    if lo >= hi {
        return None;
    }
    if lo.is_negative() && hi.is_positive() {
        return Some(Rational::zero());
    }
    if !hi.is_positive() {
        return simplest_between(&-hi, &-lo).map(|r| -r);
    }
    Some(simplest_above(lo, Some(hi)))
}

/// Simplest rational in `(lo, hi)` for `lo >= 0`; `None` means no upper end.
fn simplest_above(lo: &Rational, hi: Option<&Rational>) -> Rational {
    let fl = lo.floor();
    let next = &fl + Rational::one();
    match hi {
        Some(h) if &next >= h => {
            // no integer inside: recurse on reciprocals of the fractional parts
            let frac = lo - &fl;
            let new_lo = (h - &fl).recip();
            let new_hi = (!frac.is_zero()).then(|| frac.recip());
            fl + simplest_above(&new_lo, new_hi.as_ref()).recip()
        }
        _ => next,
    }
}
