//! Convex valuations on Hahn fields, represented as coarsenings of the
//! canonical valuation by a convex subgroup `H` of the value group.

use std::fmt;

use rand::Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::hahn::{Bound, Coefficient, Field, TruncatedSeries};
use crate::oag::{ConvexSubgroup, Group, GroupDescriptor, GroupElement, Line};
use crate::rational::rat;
use crate::report::{CheckReport, Failure};
use crate::sample::Sampler;

#[derive(Clone, PartialEq, Eq)]
pub struct ValuationSpec {
    field: Field,
    h: ConvexSubgroup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coarseness {
    Equal,
    AFiner,
    BFiner,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupClassification {
    pub discrete: bool,
    pub dense: bool,
    pub divisible: bool,
    pub p_regular_not_p_divisible: Option<u32>,
    pub not_closed_in_divisible_hull: Option<(GroupElement, u32)>,
}

impl ValuationSpec {
    /// The canonical valuation `v`, whose ring is the series of non-negative support.
    pub fn canonical(field: &Field) -> Self {
        ValuationSpec { field: field.clone(), h: field.group().trivial_subgroup() }
    }

    pub fn trivial(field: &Field) -> Self {
        ValuationSpec { field: field.clone(), h: field.group().full_subgroup() }
    }

    pub fn coarsening(field: &Field, h: ConvexSubgroup) -> Result<Self> {
        field.group().ensure_same(h.group())?;
        Ok(ValuationSpec { field: field.clone(), h })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn subgroup(&self) -> &ConvexSubgroup {
        &self.h
    }

    pub fn is_canonical(&self) -> bool {
        self.h.is_trivial()
    }

    /// The value group `vK/H` of the coarsening.
    pub fn value_group(&self) -> Group {
        self.field.group().quotient(&self.h).expect("subgroup of the field's group")
    }

    /// `w(x)`, the canonical valuation projected to `vK/H`.
    pub fn value(&self, x: &TruncatedSeries) -> Result<GroupElement> {
        self.field.ensure_same(x.field())?;
        x.valuation()?.project(&self.h)
    }

    /// Lower bound for `w(x)` when `x` carries no known terms.
    fn floor_of_unknown(&self, x: &TruncatedSeries) -> Result<Option<GroupElement>> {
        self.field.ensure_same(x.field())?;
        if x.is_exact_zero() {
            return Ok(None);
        }
        match x.precision() {
            Bound::Finite(p) if !x.has_terms() => Ok(Some(p.project(&self.h)?)),
            _ => Err(Error::precision("valuation of a series without terms")),
        }
    }

    pub fn member_o(&self, x: &TruncatedSeries) -> Result<bool> {
        if x.has_terms() {
            return Ok(!self.value(x)?.is_negative());
        }
        match self.floor_of_unknown(x)? {
            None => Ok(true),
            Some(p) if !p.is_negative() => Ok(true),
            Some(_) => Err(Error::precision("membership in the valuation ring")),
        }
    }

    pub fn member_m(&self, x: &TruncatedSeries) -> Result<bool> {
        if x.has_terms() {
            return Ok(self.value(x)?.is_positive());
        }
        match self.floor_of_unknown(x)? {
            None => Ok(true),
            Some(p) if p.is_positive() => Ok(true),
            Some(_) => Err(Error::precision("membership in the maximal ideal")),
        }
    }
}

impl fmt::Display for ValuationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_canonical() {
            write!(f, "{} canonical", self.field)
        } else {
            write!(f, "{} coarsened by {}", self.field, self.h)
        }
    }
}

impl fmt::Debug for ValuationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Smaller convex subgroup means a finer valuation.
pub fn compare_coarsenings(a: &ValuationSpec, b: &ValuationSpec) -> Result<Coarseness> {
    a.field.ensure_same(&b.field)?;
    Ok(match a.h.start().cmp(&b.h.start()) {
        std::cmp::Ordering::Equal => Coarseness::Equal,
        std::cmp::Ordering::Greater => Coarseness::AFiner,
        std::cmp::Ordering::Less => Coarseness::BFiner,
    })
}

pub fn classify_value_group(spec: &ValuationSpec) -> GroupClassification {
    let g = spec.value_group();
    let discrete = g.is_discrete();
    let trivial = g.is_trivial();
    match g.descriptor() {
        GroupDescriptor::LexProduct(lines) => {
            let (last, front) = match lines.split_last() {
                Some((l, f)) => (Some(*l), f),
                None => (None, &[][..]),
            };
            let regular = last == Some(Line::Integer) && front.iter().all(|&l| l == Line::Rational);
            GroupClassification {
                discrete,
                dense: !trivial && !discrete,
                divisible: g.is_divisible(),
                p_regular_not_p_divisible: regular.then_some(2),
                not_closed_in_divisible_hull: None,
            }
        }
        GroupDescriptor::RealEmbedded { .. } => GroupClassification {
            discrete: false,
            dense: true,
            divisible: false,
            p_regular_not_p_divisible: Some(2),
            not_closed_in_divisible_hull: Some((g.unit().expect("real group has 1"), 2)),
        },
    }
}

/// The coarsening `v_p` whose ring has units of value the maximal `p`-divisible
/// convex subgroup.
pub fn vp_spec(spec: &ValuationSpec, p: u32) -> Result<ValuationSpec> {
    if !spec.is_canonical() {
        return Err(Error::Precondition("expected the canonical valuation".into()));
    }
    let h = spec.field.group().max_p_divisible_convex(p)?;
    ValuationSpec::coarsening(&spec.field, h)
}

/// A sampled element of the ring of `spec`, rescaled into it when needed.
pub(crate) fn sample_in_ring(spec: &ValuationSpec, s: &mut Sampler) -> TruncatedSeries {
    let x = s.series(&spec.field);
    if spec.member_o(&x).expect("exact sample") {
        x
    } else {
        let v = x.valuation().expect("nonzero sample");
        x.mul_monomial(&Coefficient::one(), &-&v)
    }
}

/// A sampled `r` with `0 < r < 1`: a proper fraction plus an infinitesimal.
fn sample_fraction(field: &Field, s: &mut Sampler) -> TruncatedSeries {
    let d = s.rng.gen_range(2..=12);
    let q = rat(s.rng.gen_range(1..d), d);
    let mut r = TruncatedSeries::constant(field, Coefficient::from(q));
    let g = field.group();
    if !g.is_trivial() && s.rng.gen_bool(0.5) {
        let e = s.exponent(g);
        if !e.is_zero() {
            let c = Coefficient::from(s.nonzero_rational(5));
            r = r.add(&TruncatedSeries::monomial(field, c, e.abs())).expect("same field");
        }
    }
    r
}

/// Samples `x < y < z` with `x, z` in the valuation ring and checks that `y` is too.
pub fn convexity_scan(spec: &ValuationSpec, samples: u64, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("convexity", seed, samples);
    report.param("field", &spec.field).param("subgroup", &spec.h);
    let mut s = Sampler::new(seed);
    let (mut between, mut random_hits) = (0u64, 0u64);
    for _ in 0..samples {
        let (mut x, mut z) = (sample_in_ring(spec, &mut s), sample_in_ring(spec, &mut s));
        match x.compare(&z)? {
            std::cmp::Ordering::Equal => continue,
            std::cmp::Ordering::Greater => std::mem::swap(&mut x, &mut z),
            std::cmp::Ordering::Less => {}
        }
        let y = if s.rng.gen_bool(0.5) {
            let r = sample_fraction(&spec.field, &mut s);
            x.add(&z.sub(&x)?.mul(&r)?)?
        } else {
            let y = s.series(&spec.field);
            if !(x.compare(&y)?.is_lt() && y.compare(&z)?.is_lt()) {
                continue;
            }
            random_hits += 1;
            y
        };
        between += 1;
        let ok = x.compare(&y)?.is_lt() && y.compare(&z)?.is_lt() && spec.member_o(&y)?;
        report.expect(ok, || Failure::new(format!("x={x}, y={y}, z={z}"), "y in ring", "y outside ring"));
    }
    report.detail("between_checked", between).detail("random_between", random_hits);
    report.detail("ring", json!(format!("v(x) >= 0 or v(x) in {}", spec.h)));
    Ok(report)
}
