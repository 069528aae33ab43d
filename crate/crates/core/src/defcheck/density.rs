use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::hahn::{Coefficient, CoefficientField, Field, TruncatedSeries};
use crate::oag::Group;
use crate::ratfunc::RatFunc;
use crate::rational::{fmt_rational, rat, Rational};
use crate::report::{CheckReport, Failure};
use crate::sample::Sampler;

/// `phi(x) = exists y. 1 + x^4 = y^4` for `x` a univariate rational function in `s`.
///
/// A nonconstant `x` never satisfies `phi` (a classical fact about rational
/// functions, assumed rather than re-proved here). For a constant
/// `a` the answer is the 4th-power test in the coefficient field: always
/// yes in the real-closed model, and over the rationals only for `a = 0`.
pub fn density_phi_member(x: &RatFunc, mode: CoefficientField) -> Result<bool> {
    if !matches!(mode, CoefficientField::Rationals | CoefficientField::RationalsAsRealClosedModel) {
        return Err(Error::InvalidArgument(format!("mode {mode} is not Q or Rmodel")));
    }
    if x.generator_count() > 1 {
        return Err(Error::InvalidArgument(format!("{x} is not univariate in s")));
    }
    let Some(a) = x.as_constant() else {
        return Ok(false);
    };
    let c = Coefficient::from(Rational::one() + a.pow(4));
    mode.has_nth_root(&c, 4)
}

/// Whether `1 + (p/q)^4` is the 4th power of a rational, by direct search:
/// in lowest terms the root must be `m/q` with `m^4 = p^4 + q^4`.
fn fourth_power_brute(a: &Rational) -> bool {
    let (p, q) = (a.numer().abs(), a.denom().clone());
    let target = p.pow(4) + q.pow(4);
    let top = (&p + &q).to_u64().expect("small search bound");
    ({ q.to_u64().expect("small") }..=top).any(|m| BigInt::from(m).pow(4) == target)
}

/// Over the rationals, `phi` holds exactly at `0` on `|num|, |den| <= bound`,
/// cross-checked against a direct search for 4th powers.
pub fn density_phi_scan(bound: i64, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("density", seed, 0);
    report.param("mode", CoefficientField::Rationals).param("bound", bound);
    let (mut count, mut members) = (0u64, 0u64);
    let mut seen = std::collections::BTreeSet::new();
    for den in 1..=bound {
        for num in -bound..=bound {
            let a = rat(num, den);
            if !seen.insert(a.clone()) {
                continue;
            }
            count += 1;
            let phi = density_phi_member(&RatFunc::constant(a.clone()), CoefficientField::Rationals)?;
            let brute = fourth_power_brute(&a);
            members += u64::from(phi);
            report.expect(phi == brute && phi == a.is_zero(), || {
                Failure::new(
                    format!("a = {}", fmt_rational(&a)),
                    format!("phi = {}", a.is_zero()),
                    format!("phi = {phi}, search = {brute}"),
                )
            });
        }
    }
    report.samples = count;
    report.detail("members", members);
    Ok(report)
}

/// Sampled check that the formula-defined convex hull of the constants is the
/// valuation ring: `z` is bounded by constants satisfying `phi` iff `v(z) >= 0`.
pub fn density_convex_hull_check(mode: CoefficientField, samples: u64, seed: u64) -> Result<CheckReport> {
    if mode != CoefficientField::RationalsAsRealClosedModel {
        return Err(Error::Precondition("the hull check needs the real-closed model".into()));
    }
    let field = Field::new(mode, Group::parse("lex[Q]")?);
    let mut report = CheckReport::new("density", seed, samples);
    report.param("mode", mode).param("field", &field);
    let mut s = Sampler::new(seed);
    s.config.max_den = 12;
    let c = |q: Rational| TruncatedSeries::constant(&field, Coefficient::from(q));
    let (mut members, mut others) = (0u64, 0u64);
    for i in 0..samples {
        let z = match i {
            0 => TruncatedSeries::zero(&field),
            1 => crate::hahn::parse_series(&field, "3 + t^(1/2)")?,
            2 => crate::hahn::parse_series(&field, "t^(-1/3)")?,
            _ => s.series(&field),
        };
        let nonneg = z.is_exact_zero() || !z.valuation()?.is_negative();
        let hull = if nonneg {
            // bounds -(|res z| + 1) <= z <= |res z| + 1, both satisfying phi
            let r = z.residue()?.as_rational().cloned().unwrap_or_default().abs() + Rational::one();
            let phi = density_phi_member(&RatFunc::constant(-r.clone()), mode)?
                && density_phi_member(&RatFunc::constant(r.clone()), mode)?;
            phi && c(-r.clone()).compare(&z)?.is_le() && z.compare(&c(r))?.is_le()
        } else {
            // no constant bounds z: check against sampled large constants
            let za = z.abs()?;
            let mut bounded = false;
            for _ in 0..5 {
                let k = rat(s.rng.gen_range(1..=1_000_000), s.rng.gen_range(1..=20));
                bounded |= za.compare(&c(k))?.is_le();
            }
            bounded
        };
        if hull {
            members += 1;
        } else {
            others += 1;
        }
        report.expect(hull == nonneg, || {
            Failure::new(format!("z = {z}"), format!("in hull: {nonneg}"), format!("in hull: {hull}"))
        });
    }
    report.detail("hull_members", members).detail("outside_hull", others);
    Ok(report)
}
