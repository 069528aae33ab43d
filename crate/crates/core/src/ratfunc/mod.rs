//! Rational functions in `s0, s1, ...` over the rationals, with a weighted
//! monomial valuation and the shift automorphisms `s_{n+1} -> s_{n+1} + s0`.
//!
//! The valuation takes the least weight among the monomials of numerator and
//! denominator. This is the true valuation only when the generators have
//! algebraically independent leading data, as in the two preset weightings;
//! it is not meant for arbitrary substitutions.

mod func;
mod parse;
mod poly;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

pub use func::RatFunc;
pub use parse::parse_ratfunc;
pub use poly::{Monomial, MultiPoly};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, parse_rational, rat, Rational};
use crate::report::{CheckReport, Failure};
use crate::sample;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightAssignment {
    /// `v(s0) = -1`, `v(s_i) = 0` otherwise.
    Ex1,
    /// `v(s0) = -1`, `v(s_i) = 1/i` otherwise.
    Ex2,
    /// Weights listed per generator; unlisted generators have no weight.
    Explicit(BTreeMap<usize, Rational>),
}

impl WeightAssignment {
    pub fn weight(&self, i: usize) -> Result<Rational> {
        match self {
            WeightAssignment::Ex1 => Ok(if i == 0 { int(-1) } else { int(0) }),
            WeightAssignment::Ex2 => Ok(if i == 0 { int(-1) } else { rat(1, i as i64) }),
            WeightAssignment::Explicit(w) => {
                w.get(&i).cloned().ok_or_else(|| Error::InvalidArgument(format!("no weight given for s{i}")))
            }
        }
    }

    /// `ex1`, `ex2`, or a list such as `s0=-1,s1=0,s2=1/2`.
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "ex1" => return Ok(WeightAssignment::Ex1),
            "ex2" => return Ok(WeightAssignment::Ex2),
            _ => {}
        }
        let mut w = BTreeMap::new();
        let mut offset = 0;
        for part in text.split(',') {
            let bad = || Error::parse(offset, format!("expected s<i>=<rational>, got '{part}'"));
            let (lhs, rhs) = part.split_once('=').ok_or_else(bad)?;
            let i: usize = lhs.trim().strip_prefix('s').and_then(|d| d.parse().ok()).ok_or_else(bad)?;
            let q = parse_rational(rhs.trim()).map_err(|_| bad())?;
            if w.insert(i, q).is_some() {
                return Err(Error::parse(offset, format!("s{i} weighted twice")));
            }
            offset += part.len() + 1;
        }
        Ok(WeightAssignment::Explicit(w))
    }
}

impl fmt::Display for WeightAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightAssignment::Ex1 => f.write_str("ex1"),
            WeightAssignment::Ex2 => f.write_str("ex2"),
            WeightAssignment::Explicit(w) => {
                let parts: Vec<_> = w.iter().map(|(i, q)| format!("s{i}={}", fmt_rational(q))).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

fn min_weight(p: &MultiPoly, w: &WeightAssignment) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    for (m, _) in p.terms() {
        let mut s = Rational::zero();
        for (i, &e) in m.exponents().iter().enumerate().filter(|(_, &e)| e > 0) {
            s += w.weight(i)? * int(e as i64);
        }
        if best.as_ref().is_none_or(|b| &s < b) {
            best = Some(s);
        }
    }
    best.ok_or(Error::ZeroValuation)
}

pub fn weighted_valuation(f: &RatFunc, w: &WeightAssignment) -> Result<Rational> {
    Ok(min_weight(f.numerator(), w)? - min_weight(f.denominator(), w)?)
}

fn shift_images(n: usize, sign: i64) -> impl Fn(usize) -> MultiPoly {
    move |i| {
        let s = MultiPoly::generator(i);
        if i == n + 1 {
            s.add(&MultiPoly::generator(0).scale(&int(sign)))
        } else {
            s
        }
    }
}

/// `alpha_n`: fixes every generator except `s_{n+1} -> s_{n+1} + s0`.
pub fn automorphism_apply(f: &RatFunc, n: usize) -> RatFunc {
    f.substitute(&shift_images(n, 1)).expect("automorphisms keep denominators nonzero")
}

pub fn automorphism_inverse(f: &RatFunc, n: usize) -> RatFunc {
    f.substitute(&shift_images(n, -1)).expect("automorphisms keep denominators nonzero")
}

/// A random rational function in `s0..s_{gens-1}` with small coefficients.
pub fn sample_ratfunc(rng: &mut impl Rng, gens: usize) -> RatFunc {
    let num = sample_poly(rng, gens);
    let den = if rng.gen_bool(0.5) { MultiPoly::one() } else { sample_poly(rng, gens) };
    RatFunc::new(num, den).unwrap_or_else(|_| RatFunc::constant(Rational::one()))
}

fn sample_poly(rng: &mut impl Rng, gens: usize) -> MultiPoly {
    let k = rng.gen_range(1..=3);
    MultiPoly::from_terms((0..k).map(|_| {
        let m = Monomial::new((0..gens).map(|_| rng.gen_range(0..=2)).collect());
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        (m, rat(sign * rng.gen_range(1..=9), rng.gen_range(1..=4)))
    }))
}

/// Runs the automorphism argument on concrete data: `s_{n+1}` lies in the
/// valuation ring, its image under `alpha_n` does not, while `alpha_n` fixes
/// `s0..s_n` and is a ring homomorphism on sampled pairs.
///
/// This demonstrates the mechanism; it does not prove non-definability.
pub fn undefinability_demo(w: &WeightAssignment, n: usize, samples: u64, seed: u64) -> Result<CheckReport> {
    let v0 = w.weight(0)?;
    if !v0.is_negative() {
        return Err(Error::Precondition(format!("v(s0) = {} must be negative", fmt_rational(&v0))));
    }
    for i in 1..=n + 1 {
        let vi = w.weight(i)?;
        if vi.is_negative() {
            return Err(Error::Precondition(format!("v(s{i}) = {} must be >= 0", fmt_rational(&vi))));
        }
    }
    let mut report = CheckReport::new("undefinable", seed, samples);
    report.param("weights", w).param("n", n);

    let s = RatFunc::generator(n + 1);
    let image = automorphism_apply(&s, n);
    let (vs, vi) = (weighted_valuation(&s, w)?, weighted_valuation(&image, w)?);
    report.detail("generator", format!("s{}", n + 1));
    report.detail("v_generator", fmt_rational(&vs));
    report.detail("image", image.to_string());
    report.detail("v_image", fmt_rational(&vi));
    report.expect(!vs.is_negative(), || Failure::new(format!("v(s{})", n + 1), ">= 0", fmt_rational(&vs)));
    report.expect(vi.is_negative(), || Failure::new(format!("v(alpha(s{}))", n + 1), "< 0", fmt_rational(&vi)));
    for i in 0..=n {
        let g = RatFunc::generator(i);
        let a = automorphism_apply(&g, n);
        report.expect(a == g, || Failure::new(format!("alpha(s{i})"), format!("s{i}"), a.to_string()));
    }

    // homomorphism and invertibility on sampled pairs
    let mut rng = sample::rng(seed);
    let gens = n + 2;
    for _ in 0..samples {
        let f = sample_ratfunc(&mut rng, gens);
        let g = sample_ratfunc(&mut rng, gens);
        let (af, ag) = (automorphism_apply(&f, n), automorphism_apply(&g, n));
        let sum = automorphism_apply(&f.add(&g), n);
        report.expect(sum == af.add(&ag), || {
            Failure::new(format!("alpha(({f}) + ({g}))"), af.add(&ag).to_string(), sum.to_string())
        });
        let prod = automorphism_apply(&f.mul(&g), n);
        report.expect(prod == af.mul(&ag), || {
            Failure::new(format!("alpha(({f}) * ({g}))"), af.mul(&ag).to_string(), prod.to_string())
        });
        let back = automorphism_inverse(&af, n);
        report.expect(back == f, || Failure::new(format!("alpha^-1(alpha({f}))"), f.to_string(), back.to_string()));
    }
    report.detail("note", "executes the automorphism argument on samples; not a proof");
    Ok(report)
}
