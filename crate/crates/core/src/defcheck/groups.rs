use num_traits::Zero;

use crate::error::{Error, Result};
use crate::oag::{ConvexSubgroup, Group, GroupDescriptor, GroupElement, Line};
use crate::ovf::{vp_spec, ValuationSpec};
use crate::rational::{int, rat, Rational};
use crate::report::{CheckReport, Failure};
use crate::sample::Sampler;

/// Every element of a small box: integer coordinates in `[-r, r]`, plus halves
/// on rational lines. Empty for groups of rank above 3.
fn box_elements(g: &Group, r: i64) -> Vec<GroupElement> {
    let Some(lines) = g.lines() else {
        return Vec::new();
    };
    if lines.len() > 3 {
        return Vec::new();
    }
    let values = |l: Line| -> Vec<Rational> {
        match l {
            Line::Integer => (-r..=r).map(int).collect(),
            Line::Rational => (-2 * r..=2 * r).map(|k| rat(k, 2)).collect(),
        }
    };
    let mut out: Vec<Vec<Rational>> = vec![Vec::new()];
    for &l in lines {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values(l).into_iter().map(move |q| {
                    let mut c = prefix.clone();
                    c.push(q);
                    c
                })
            })
            .collect();
    }
    out.into_iter().map(|c| g.lex_element(c).expect("box coordinates")).collect()
}

/// Cross-checks the structural `Delta_gamma` against the interval formula on a
/// box of small elements plus `samples` random ones.
pub fn delta_gamma_report(g: &Group, gamma: &GroupElement, p: u32, samples: u64, seed: u64) -> Result<CheckReport> {
    let delta = g.delta_gamma(gamma, p)?;
    let mut report = CheckReport::new("delta-gamma", seed, samples);
    report.param("group", g).param("gamma", gamma).param("p", p);
    report.detail("delta_gamma", delta.to_string());
    let mut s = Sampler::new(seed);
    let mut xs = box_elements(g, 4);
    let boxed = xs.len();
    xs.extend((0..samples).map(|_| s.exponent(g)));
    let (mut agree, mut members) = (0u64, 0u64);
    for x in &xs {
        let structural = delta.contains(x)?;
        let formula = g.formula_member_delta(x, gamma, p)?;
        members += u64::from(structural);
        agree += u64::from(structural == formula);
        report.expect(structural == formula, || {
            Failure::new(format!("x = {x}"), format!("in Delta_gamma = {structural}"), format!("formula = {formula}"))
        });
    }
    report.detail("box_elements", boxed).detail("members", members).detail("formula_agree", agree);
    Ok(report)
}

/// An element of `h` from a sampled exponent by zeroing the leading coordinates.
fn into_subgroup(x: &GroupElement, h: &ConvexSubgroup) -> Result<GroupElement> {
    match x.lex_coords() {
        Some(c) => {
            let coords =
                c.iter().enumerate().map(|(i, q)| if i < h.start() { Rational::zero() } else { q.clone() }).collect();
            x.group().lex_element(coords)
        }
        None if h.is_full() => Ok(x.clone()),
        None => Ok(x.group().zero()),
    }
}

/// Checks the coarsening `v_p`: its subgroup is `p`-divisible, no larger convex
/// subgroup is, and its ring is `{x : v(x) >= 0 or v(x) ∈ H}`.
pub fn vp_report(spec: &ValuationSpec, p: u32, samples: u64, seed: u64) -> Result<CheckReport> {
    let vp = vp_spec(spec, p)?;
    let h = vp.subgroup().clone();
    let g = spec.field().group().clone();
    let mut report = CheckReport::new("vp", seed, samples);
    report.param("field", spec.field()).param("p", p);
    report.detail("subgroup", h.to_string()).detail("value_group", vp.value_group().to_string());

    if let GroupDescriptor::LexProduct(lines) = g.descriptor() {
        if h.start() > 0 {
            let k = h.start() - 1;
            let mut coords = vec![Rational::zero(); lines.len()];
            coords[k] = int(1);
            let w = g.lex_element(coords)?;
            report.expect(w.divide_exact(p).is_none(), || {
                Failure::new(format!("suffix {k}"), "not p-divisible", format!("{w} divisible by {p}"))
            });
            report.detail("maximality_witness", w.to_string());
        }
    } else if !h.is_trivial() {
        return Err(Error::Precondition(format!("unexpected subgroup {h} of {g}")));
    }

    let mut s = Sampler::new(seed);
    let (mut in_ring, mut coarser) = (0u64, 0u64);
    for _ in 0..samples {
        let e = into_subgroup(&s.exponent(&g), &h)?;
        report.expect(e.divide_exact(p).is_some(), || {
            Failure::new(format!("{e} in H"), format!("divisible by {p}"), "not divisible")
        });

        let x = s.series(spec.field());
        let v = x.valuation()?;
        let expected = !v.is_negative() || h.contains(&v)?;
        let got = vp.member_o(&x)?;
        let fine = spec.member_o(&x)?;
        in_ring += u64::from(got);
        coarser += u64::from(got && !fine);
        report.expect(got == expected && (!fine || got), || {
            Failure::new(
                format!("x = {x}"),
                format!("in O_vp = {expected}"),
                format!("in O_vp = {got}, in O_v = {fine}"),
            )
        });
    }
    report.detail("in_ring", in_ring).detail("only_in_coarsening", coarser);
    Ok(report)
}
