//! Exact arithmetic in `Z[sqrt(d)]` viewed as a subgroup of the reals.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact sign of `a + b*sqrt(d)`, `d` square-free and at least two.
pub fn sign(a: &BigInt, b: &BigInt, d: u64) -> Ordering {
    let sa = a.cmp(&BigInt::zero());
    let sb = b.cmp(&BigInt::zero());
    match (sa, sb) {
        (s, Ordering::Equal) => s,
        (Ordering::Equal, s) => s,
        (x, y) if x == y => x,
        _ => {
            // opposite signs: the larger magnitude wins, and a^2 = d b^2 cannot happen
            let lhs = a * a;
            let rhs = b * b * BigInt::from(d);
            if lhs > rhs {
                sa
            } else {
                sb
            }
        }
    }
}

pub fn mul(x: &(BigInt, BigInt), y: &(BigInt, BigInt), d: u64) -> (BigInt, BigInt) {
    (&x.0 * &y.0 + BigInt::from(d) * &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
}

/// Fundamental unit `x + y*sqrt(d) > 1` of `Z[sqrt(d)]`, from the continued
/// fraction of `sqrt(d)`. The unit may have norm `-1`.
pub fn fundamental_unit(d: u64) -> (BigInt, BigInt) {
    let dd = BigInt::from(d);
    let a0 = dd.sqrt();
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    // convergents h/k
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        let norm = &h * &h - &dd * &k * &k;
        if norm.abs().is_one() {
            return (h, k);
        }
        m = &q * &a - &m;
        q = (&dd - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// The unit `0 < w < 1` with `w = 1/u` for the fundamental unit `u`.
pub fn small_unit(d: u64) -> (BigInt, BigInt) {
    let (x, y) = fundamental_unit(d);
    let w = (x.clone(), -y.clone());
    if sign(&w.0, &w.1, d) == Ordering::Greater {
        w
    } else {
        (-x, y)
    }
}

pub fn is_square_free(d: u64) -> bool {
    let mut f = 2u64;
    while f * f <= d {
        if d.is_multiple_of(f * f) {
            return false;
        }
        f += 1;
    }
    true
}
