use rand::Rng;

use super::{lift, positive_series};
use crate::error::{Error, Result};
use crate::hahn::{Coefficient, TruncatedSeries};
use crate::ovf::ValuationSpec;
use crate::report::{CheckReport, Failure};
use crate::sample::Sampler;

/// `t^e` where `e` lifts the least positive element of the value group of `spec`.
pub fn default_b_thm_i(spec: &ValuationSpec) -> Result<TruncatedSeries> {
    let eps = spec
        .value_group()
        .least_positive()
        .ok_or_else(|| Error::Precondition("value group has no least positive element".into()))?;
    Ok(TruncatedSeries::t_pow(spec.field(), lift(spec.field().group(), &eps)?))
}

/// `|x^2/b| < 1`, evaluated as `x^2 < |b|` (multiplying through by `|b| > 0`).
pub fn thm_i_formula(b: &TruncatedSeries, x: &TruncatedSeries) -> Result<bool> {
    let lhs = x.mul(x)?;
    Ok(lhs.compare(&b.abs()?)?.is_lt())
}

pub fn check_thm_i(spec: &ValuationSpec, b: &TruncatedSeries, samples: u64, seed: u64) -> Result<CheckReport> {
    let eps = spec
        .value_group()
        .least_positive()
        .ok_or_else(|| Error::Precondition("value group has no least positive element".into()))?;
    let vb = spec.value(b)?;
    if vb != eps {
        return Err(Error::Precondition(format!("w(b) = {vb}, expected the least positive {eps}")));
    }
    let mut report = CheckReport::new("thm-i", seed, samples);
    report.param("field", spec.field()).param("subgroup", spec.subgroup()).param("b", b);

    let field = spec.field();
    let e = lift(field.group(), &eps)?;
    let mut s = Sampler::new(seed);
    let (mut members, mut others) = (0u64, 0u64);
    for i in 0..samples {
        let x = match i {
            0 => TruncatedSeries::zero(field),
            1 => TruncatedSeries::one(field),
            2 => TruncatedSeries::t_pow(field, e.clone()),
            3 => TruncatedSeries::t_pow(field, -&e),
            _ => match s.rng.gen_range(0..4) {
                0 => s.series(field),
                // units and near-units
                1 => {
                    let x = positive_series(&mut s, field);
                    let v = x.valuation()?;
                    x.mul_monomial(&Coefficient::one(), &-&v)
                }
                // small multiples of the least positive value
                2 => {
                    let k = s.rng.gen_range(-3..=3);
                    let c = s.coefficient(field.coefficients());
                    let base = e.scale_i(k);
                    let r = s.series(field);
                    let shift = &(&base + &e) - &r.valuation()?;
                    let lead = TruncatedSeries::monomial(field, c, base);
                    lead.add(&r.mul_monomial(&Coefficient::one(), &shift))?
                }
                _ => s.series(field).mul_monomial(&Coefficient::one(), &e),
            },
        };
        let formula = thm_i_formula(b, &x)?;
        let member = spec.member_m(&x)?;
        if member {
            members += 1;
        } else {
            others += 1;
        }
        report.expect(formula == member, || {
            Failure::new(format!("x = {x}"), format!("in M: {member}"), format!("|x^2/b| < 1: {formula}"))
        });
    }
    report.detail("in_maximal_ideal", members).detail("outside_maximal_ideal", others);
    Ok(report)
}
