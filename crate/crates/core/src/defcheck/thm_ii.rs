use rand::Rng;

use super::{lift, positive_series, require_positive};
use crate::error::{Error, Result};
use crate::hahn::{Bound, Coefficient, Sign, TruncatedSeries};
use crate::oag::GroupElement;
use crate::ovf::{classify_value_group, ValuationSpec};
use crate::report::{CheckReport, Failure};
use crate::sample::Sampler;

/// `(gamma, b)` with `gamma` outside `nG` but approximable by `nG`, and `b = t^gamma`.
pub fn select_param_ii(spec: &ValuationSpec, n: u32) -> Result<(GroupElement, TruncatedSeries)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 2")));
    }
    let (gamma, _) = classify_value_group(spec)
        .not_closed_in_divisible_hull
        .ok_or_else(|| Error::NotDense(format!("{} is closed in its divisible hull", spec.value_group())))?;
    // (1,0) is outside nG for every n >= 2 in the real-embedded family
    if gamma.is_in_n_g(n) {
        return Err(Error::Precondition(format!("{gamma} lies in {n}G")));
    }
    let gamma = lift(spec.field().group(), &gamma)?;
    let b = TruncatedSeries::t_pow(spec.field(), gamma.clone());
    Ok((gamma, b))
}

/// Membership in `S_b = { x : x >= 0, x^n/b < 1 }` through the equivalent
/// valuation form `x >= 0 and n*v(x) > v(b)` (equality cannot occur since `v(b)` is outside `nG`).
pub fn s_b_member(spec: &ValuationSpec, b: &TruncatedSeries, n: u32, x: &TruncatedSeries) -> Result<bool> {
    if x.is_exact_zero() {
        return Ok(true);
    }
    if x.sign()? != Sign::Positive {
        return Ok(false);
    }
    Ok(spec.value(x)?.scale_i(n as i64) > spec.value(b)?)
}

/// The literal order form `x >= 0 and x^n < b`, for `b > 0`.
pub fn s_b_member_order(b: &TruncatedSeries, n: u32, x: &TruncatedSeries) -> Result<bool> {
    if x.is_exact_zero() {
        return Ok(true);
    }
    if x.sign()? == Sign::Negative {
        return Ok(false);
    }
    let cap = deciding_cap(&x.valuation()?.scale_i(n as i64), &b.valuation()?);
    Ok(x.pow_below(n, &cap)?.compare(b)?.is_lt())
}

/// A bound just above both leading exponents: enough to decide the sign of
/// a difference whose two sides have these valuations.
fn deciding_cap(u: &GroupElement, w: &GroupElement) -> Bound {
    let top = u.clone().max(w.clone());
    match top.group().unit() {
        Some(e) => Bound::Finite(&top + &e),
        None => Bound::Infinite,
    }
}

/// Both forms for the quotient `p/q` with `q > 0`, without dividing:
/// `(p/q)^n < b` iff `p^n < b q^n`.
fn quotient_in_s_b(
    spec: &ValuationSpec,
    b: &TruncatedSeries,
    n: u32,
    p: &TruncatedSeries,
    q: &TruncatedSeries,
) -> Result<(bool, bool)> {
    let by_value = if p.is_exact_zero() {
        true
    } else {
        p.sign()? == Sign::Positive && (&spec.value(p)? - &spec.value(q)?).scale_i(n as i64) > spec.value(b)?
    };
    let by_order = p.is_exact_zero() || {
        let nn = n as i64;
        let rhs_v = &b.valuation()? + &q.valuation()?.scale_i(nn);
        let cap = deciding_cap(&p.valuation()?.scale_i(nn), &rhs_v);
        let rhs = b.mul_below(&q.pow_below(n, &cap.shift(&-&b.valuation()?))?, &cap)?;
        p.sign()? != Sign::Negative && p.pow_below(n, &cap)?.compare(&rhs)?.is_lt()
    };
    Ok((by_value, by_order))
}

pub fn check_thm_ii(spec: &ValuationSpec, b: &TruncatedSeries, n: u32, samples: u64, seed: u64) -> Result<CheckReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} must be at least 2")));
    }
    require_positive(b)?;
    let gamma = spec.value(b)?;
    if gamma.is_in_n_g(n) {
        return Err(Error::Precondition(format!("v(b) = {gamma} lies in {n}G")));
    }
    let field = spec.field();
    let group = field.group().clone();
    if group.surd_d().is_none() || !spec.is_canonical() {
        return Err(Error::NotDense(format!("{spec} has no dense real-embedded value group")));
    }
    let mut report = CheckReport::new("thm-ii", seed, samples);
    report.param("field", field).param("b", b).param("n", n).param("gamma", &gamma);

    let one = Coefficient::one();
    let mut s = Sampler::new(seed);
    let (mut closures, mut witnesses) = (0u64, 0u64);
    let mut first_witness = None;
    for i in 0..samples {
        let y = match i {
            0 => TruncatedSeries::one(field),
            1 => TruncatedSeries::t_pow(field, group.real_element((-1).into(), 1.into())?),
            2 => TruncatedSeries::t_pow(field, group.real_element(1.into(), (-1).into())?),
            _ if s.rng.gen_bool(0.5) => s.series(field),
            _ => s.series(field).neg(),
        };
        let vy = spec.value(&y)?;
        if !vy.is_negative() {
            // closure: y^4 x stays in S_b for sampled x in S_b
            for _ in 0..2 {
                let p = positive_series(&mut s, field);
                let zeta = &gamma.abs() + &s.exponent(&group).abs();
                let x = p.mul_monomial(&one, &(&zeta - &p.valuation()?));
                let y4x = y.pow(4)?.mul(&x)?;
                let forms = [
                    s_b_member(spec, b, n, &x)?,
                    s_b_member_order(b, n, &x)?,
                    s_b_member(spec, b, n, &y4x)?,
                    s_b_member_order(b, n, &y4x)?,
                ];
                closures += 1;
                report.expect(forms.iter().all(|&f| f), || {
                    Failure::new(format!("y = {y}, x = {x}"), "x and y^4 x in S_b", format!("{forms:?}"))
                });
            }
            continue;
        }
        // the proof's witness: n*zeta within -v(y) of gamma, z = t^zeta
        let eta = group.dense_approx_witness(n, &gamma, &-&vy)?;
        let zeta = eta.divide_exact(n).expect("witness lies in nG");
        let z = TruncatedSeries::t_pow(field, zeta.clone());
        let y2 = y.mul(&y)?;
        let between = &gamma + &vy < eta && eta < &gamma - &vy;
        let (inside_v, inside_o) = quotient_in_s_b(spec, b, n, &z, &y2)?;
        let (image_v, image_o) = quotient_in_s_b(spec, b, n, &y2.mul(&z)?, &TruncatedSeries::one(field))?;
        witnesses += 1;
        let ok = between && inside_v && inside_o && !image_v && !image_o;
        if ok && first_witness.is_none() {
            first_witness = Some(format!("y = {y}, zeta = {zeta}"));
        }
        report.expect(ok, || {
            Failure::new(
                format!("y = {y}"),
                "gamma+v(y) < n*zeta < gamma-v(y), z/y^2 in S_b, y^2 z not in S_b",
                format!("between={between}, inside=({inside_v},{inside_o}), image=({image_v},{image_o})"),
            )
            .with_witness(format!("zeta = {zeta}"))
        });
    }
    report.detail("closure_checks", closures).detail("witnesses", witnesses);
    if let Some(w) = first_witness {
        report.detail("example_witness", w);
    }
    Ok(report)
}
