use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::hahn::{Coefficient, CoefficientField, Sign, TruncatedSeries};
use crate::ovf::ValuationSpec;
use crate::ratfunc::parse_ratfunc;
use crate::rational::{fmt_rational, int, rat, simplest_between, Rational};
use crate::report::{CheckReport, Failure};
use crate::sample::Sampler;

/// A residue quadratic `f = X^2 + c1 X + c0` with a single irrational root in `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThmIIIInstance {
    c1: BigInt,
    c0: BigInt,
    a: Rational,
    b: Rational,
}

impl ThmIIIInstance {
    pub fn new(c1: BigInt, c0: BigInt, a: Rational, b: Rational) -> Result<Self> {
        let inst = ThmIIIInstance { c1, c0, a, b };
        if inst.a >= inst.b {
            return Err(Error::Precondition("need a < b".into()));
        }
        let disc = &inst.c1 * &inst.c1 - BigInt::from(4) * &inst.c0;
        if disc.is_negative() || (disc.sqrt().pow(2) == disc) {
            return Err(Error::Precondition(format!("{inst} must have irrational real roots")));
        }
        // f is convex, so f(a) < 0 < f(b) leaves exactly the larger root in (a, b)
        if !(inst.eval(&inst.a).is_negative() && inst.eval(&inst.b).is_positive()) {
            return Err(Error::Precondition(format!("need f(a) < 0 < f(b) for {inst}")));
        }
        Ok(inst)
    }

    /// `X^2 - 2` on `(1, 2)`.
    pub fn sqrt2() -> Self {
        ThmIIIInstance::new(0.into(), (-2).into(), int(1), int(2)).expect("valid instance")
    }

    /// Parses `f` as a polynomial in `X` (for example `X^2-2`) together with the ends.
    pub fn parse(f: &str, a: &str, b: &str) -> Result<Self> {
        let g = parse_ratfunc(&f.replace(['X', 'x'], "s0"))?;
        let bad = || Error::Precondition(format!("{f:?} is not a monic integer quadratic in X"));
        if g.generator_count() > 1 || g.denominator().as_constant() != Some(Rational::one()) {
            return Err(bad());
        }
        let mut c = [Rational::zero(), Rational::zero(), Rational::zero()];
        for (m, q) in g.numerator().terms() {
            let d = m.degree() as usize;
            *c.get_mut(d).ok_or_else(bad)? = q.clone();
        }
        if !c[2].is_one() || !c[1].is_integer() || !c[0].is_integer() {
            return Err(bad());
        }
        let a = crate::rational::parse_rational(a)?;
        let b = crate::rational::parse_rational(b)?;
        ThmIIIInstance::new(c[1].to_integer(), c[0].to_integer(), a, b)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        x * x + Rational::from_integer(self.c1.clone()) * x + Rational::from_integer(self.c0.clone())
    }

    /// The lift `F` evaluated at a series.
    pub fn eval_series(&self, x: &TruncatedSeries) -> Result<TruncatedSeries> {
        let k = |c: &BigInt| TruncatedSeries::constant(x.field(), Coefficient::from(Rational::from_integer(c.clone())));
        x.mul(x)?.add(&x.mul(&k(&self.c1))?)?.add(&k(&self.c0))
    }

    /// `S = { x : a <= x <= b, F(x) < 0 }` with the constant lifts of `a`, `b`.
    pub fn s_member(&self, x: &TruncatedSeries) -> Result<bool> {
        let c = |q: &Rational| TruncatedSeries::constant(x.field(), Coefficient::from(q.clone()));
        Ok(x.compare(&c(&self.a))?.is_ge()
            && x.compare(&c(&self.b))?.is_le()
            && self.eval_series(x)?.sign()? == Sign::Negative)
    }
}

impl fmt::Display for ThmIIIInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X^2")?;
        if !self.c1.is_zero() {
            let sign = if self.c1.is_negative() { '-' } else { '+' };
            write!(f, "{sign}{}*X", self.c1.abs())?;
        }
        if !self.c0.is_zero() {
            let sign = if self.c0.is_negative() { '-' } else { '+' };
            write!(f, "{sign}{}", self.c0.abs())?;
        }
        Ok(())
    }
}

/// Rational `x` with `a < x < x + eps < b` and `f(x) < 0 < f(x + eps)`.
///
/// The admissible set is the open interval `(max(a, r - eps), min(r, b - eps))`
/// around the root `r`; bisection narrows a rational bracket of `r` until that
/// interval is certified non-empty, and the simplest rational inside is returned.
pub fn residue_sign_witness(inst: &ThmIIIInstance, eps: &Rational) -> Result<Rational> {
    let (a, b) = (&inst.a, &inst.b);
    if !eps.is_positive() || eps >= &(b - a) {
        return Err(Error::Precondition(format!("need 0 < eps < b - a, got {}", fmt_rational(eps))));
    }
    let (mut lo, mut hi) = (a.clone(), b.clone());
    for _ in 0..4096 {
        let inner_lo = a.clone().max(&hi - eps);
        let inner_hi = lo.clone().min(b - eps);
        if let Some(x) = simplest_between(&inner_lo, &inner_hi) {
            let y = &x + eps;
            debug_assert!(a < &x && &y < b);
            debug_assert!(inst.eval(&x).is_negative() && inst.eval(&y).is_positive());
            return Ok(x);
        }
        let mid = (&lo + &hi) / int(2);
        if inst.eval(&mid).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::precision("bisection did not separate the root"))
}

pub fn check_thm_iii(spec: &ValuationSpec, inst: &ThmIIIInstance, samples: u64, seed: u64) -> Result<CheckReport> {
    if spec.field().coefficients() != CoefficientField::Rationals || !spec.is_canonical() {
        return Err(Error::Precondition(format!(
            "{spec}: residue field must be the rationals (canonical valuation over Q)"
        )));
    }
    let field = spec.field();
    let group = field.group().clone();
    let mut report = CheckReport::new("thm-iii", seed, samples);
    report.param("field", field).param("f", inst).param("a", fmt_rational(&inst.a)).param("b", fmt_rational(&inst.b));

    let constant = |q: &Rational| TruncatedSeries::constant(field, Coefficient::from(q.clone()));
    let a0 = constant(&inst.a);
    let width = &inst.b - &inst.a;
    // root bracket used to sample points of S
    let r_lo = residue_sign_witness(inst, &(&width / int(64)))?;

    let mut s = Sampler::new(seed);
    let infinitesimal = |s: &mut Sampler| -> Result<TruncatedSeries> {
        if group.is_trivial() {
            return Ok(TruncatedSeries::zero(field));
        }
        let p = s.series(field);
        let e = s.exponent(&group).abs();
        let e = if e.is_zero() { group.unit().expect("nontrivial") } else { e };
        Ok(p.mul_monomial(&Coefficient::one(), &(&e - &p.valuation()?)))
    };
    let (mut closures, mut witnesses, mut direct) = (0u64, 0u64, 0u64);
    let mut first_witness = None;
    for i in 0..samples {
        let y = match (i, s.rng.gen_range(0..5)) {
            (0, _) => TruncatedSeries::zero(field),
            (1, _) if !group.is_trivial() => TruncatedSeries::t_pow(field, group.unit().expect("nontrivial")),
            (2, _) => constant(&rat(1, 2)),
            (3, _) if !group.is_trivial() => TruncatedSeries::t_pow(field, group.unit().expect("nontrivial")).neg(),
            (_, 0) => s.series(field),
            (_, 1) => infinitesimal(&mut s)?.abs()?,
            (_, 2) => infinitesimal(&mut s)?.neg(),
            // a unit whose residue is drawn from (0, b - a) with denominator <= 64
            _ => {
                let d = s.rng.gen_range(1..=64i64);
                let q = Rational::new(BigInt::from(s.rng.gen_range(1..d.max(2))), BigInt::from(d)) * &width;
                let q = if q.is_zero() || q >= width { &width / int(2) } else { q };
                constant(&q).add(&infinitesimal(&mut s)?)?
            }
        };
        let in_side = spec.member_m(&y)? && y.sign()? != Sign::Negative;
        if in_side {
            // y + S stays inside S on sampled points of S
            for _ in 0..3 {
                let d = s.rng.gen_range(1..=64i64);
                let q = &inst.a + (&r_lo - &inst.a) * rat(s.rng.gen_range(1..=d), d);
                let x = constant(&q).add(&infinitesimal(&mut s)?)?;
                let (in_s, moved) = (inst.s_member(&x)?, inst.s_member(&x.add(&y)?)?);
                closures += 1;
                report.expect(in_s && moved, || {
                    Failure::new(format!("y = {y}, x = {x}"), "x and y + x in S", format!("{in_s}, {moved}"))
                });
            }
            continue;
        }
        // outside M_v or negative: exhibit x in S with x + y outside S
        let residue = if spec.value(&y).map(|v| v.is_zero()).unwrap_or(false) && y.sign()? == Sign::Positive {
            y.residue()?.as_rational().cloned()
        } else {
            None
        };
        let x = match residue {
            Some(r) if r < width => {
                let z = residue_sign_witness(inst, &r)?;
                let ok = inst.eval(&z).is_negative() && inst.eval(&(&z + &r)).is_positive();
                report.expect(ok, || {
                    Failure::new(format!("residue {}", fmt_rational(&r)), "f(z) < 0 < f(z + r)", fmt_rational(&z))
                });
                witnesses += 1;
                if first_witness.is_none() {
                    first_witness = Some(format!("y = {y}, z = {}", fmt_rational(&z)));
                }
                constant(&z)
            }
            _ => {
                direct += 1;
                a0.clone()
            }
        };
        let (in_s, moved) = (inst.s_member(&x)?, inst.s_member(&x.add(&y)?)?);
        report.expect(in_s && !moved, || {
            Failure::new(format!("y = {y}"), "x in S and x + y not in S", format!("{in_s}, {moved}"))
                .with_witness(format!("x = {x}"))
        });
    }
    report
        .detail("closure_checks", closures)
        .detail("residue_witnesses", witnesses)
        .detail("endpoint_witnesses", direct);
    if let Some(w) = first_witness {
        report.detail("example_witness", w);
    }
    Ok(report)
}
