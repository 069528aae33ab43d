use std::cmp::Ordering;

use proptest::prelude::*;
use rand::Rng;

use super::*;
use crate::error::Error;
use crate::oag::{Group, GroupElement};
use crate::rational::{int, rat, Rational};
use crate::sample::Sampler;

fn field(s: &str) -> Field {
    Field::parse(s).unwrap()
}

fn ser(f: &Field, s: &str) -> TruncatedSeries {
    parse_series(f, s).unwrap()
}

fn exp(f: &Field, s: &str) -> GroupElement {
    f.group().parse_element(s).unwrap()
}

fn lz() -> Field {
    field("Q((lex[Z]))")
}

#[test]
fn arithmetic_examples() {
    let f = lz();
    let p = ser(&f, "1 + t^(1)").mul(&ser(&f, "1 - t^(1)")).unwrap();
    assert_eq!(p, ser(&f, "1 - t^(2)"));
    let s = ser(&f, "t^(-1)").add(&ser(&f, "t^(-1)")).unwrap();
    assert_eq!(s, ser(&f, "2*t^(-1)"));
    let a = ser(&f, "1 + t^(1) + t^(2) + O(t^(3))");
    let b = ser(&f, "1 + O(t^(2))");
    assert_eq!(a.add(&b).unwrap(), ser(&f, "2 + t^(1) + O(t^(2))"));
    assert!(a.add(&ser(&field("Q((lex[Q]))"), "1")).is_err());
}

/// Replaces the unknown part of `x` by the given exact tail terms at or above its precision.
fn complete(x: &TruncatedSeries, tail: &[(GroupElement, Coefficient)]) -> TruncatedSeries {
    let extra: Vec<_> = match x.precision() {
        Bound::Infinite => Vec::new(),
        Bound::Finite(p) => tail.iter().map(|(e, c)| (e + p, c.clone())).collect(),
    };
    TruncatedSeries::from_terms(x.field(), x.terms().iter().cloned().chain(extra), Bound::Infinite).unwrap()
}

fn truncated_sample(s: &mut Sampler, f: &Field) -> TruncatedSeries {
    let x = s.series(f);
    if s.rng.gen_bool(0.5) {
        x.truncate(&Bound::Finite(s.exponent(f.group())))
    } else {
        x
    }
}

/// Non-negative tail exponents, so completions respect the precision.
fn tail(s: &mut Sampler, f: &Field) -> Vec<(GroupElement, Coefficient)> {
    (0..3).map(|_| (s.exponent(f.group()).abs(), s.coefficient(f.coefficients()))).collect()
}

#[test]
fn precision_rule_oracle() {
    // recompute with completed operands and compare below the claimed precision
    for fs in ["Q((lex[Z]))", "Q((lex[Z,Q]))", "Q((surd(2)))"] {
        let f = field(fs);
        let mut s = Sampler::new(7);
        for _ in 0..300 {
            let x = truncated_sample(&mut s, &f);
            let y = truncated_sample(&mut s, &f);
            let (tx, ty) = (tail(&mut s, &f), tail(&mut s, &f));
            let (cx, cy) = (complete(&x, &tx), complete(&y, &ty));
            let sum = x.add(&y).unwrap();
            assert!(sum.agrees_below(&cx.add(&cy).unwrap(), sum.precision()).unwrap());
            let prod = x.mul(&y).unwrap();
            let full = cx.mul(&cy).unwrap();
            assert!(full.truncate(prod.precision()) == prod, "{x:?} * {y:?}: {prod:?} vs {full:?}");
        }
    }
}

#[test]
fn valuation_examples() {
    let f = lz();
    assert_eq!(ser(&f, "t^(1)").valuation().unwrap(), exp(&f, "1"));
    assert_eq!(ser(&f, "2*t^(-1) + t^(1)").valuation().unwrap(), exp(&f, "-1"));
    assert_eq!(TruncatedSeries::zero(&f).valuation(), Err(Error::ZeroValuation));
    assert!(matches!(ser(&f, "O(t^(3))").valuation(), Err(Error::PrecisionInsufficient(_))));
}

#[test]
fn sign_examples() {
    let f = lz();
    assert_eq!(ser(&f, "t^(1)").sign().unwrap(), Sign::Positive);
    assert_eq!(ser(&f, "-t^(-1) + 5").sign().unwrap(), Sign::Negative);
    for q in ["1", "1/2", "7/3", "100"] {
        assert_eq!(ser(&f, &format!("t^(1) - {q}")).sign().unwrap(), Sign::Negative);
    }
    assert_eq!(TruncatedSeries::zero(&f).sign().unwrap(), Sign::Zero);
    assert!(ser(&f, "O(t^(1))").sign().is_err());
}

#[test]
fn inverse_examples() {
    let f = lz();
    let y = ser(&f, "1 - t^(1)").inverse(Some(&exp(&f, "4").into())).unwrap();
    assert_eq!(y, ser(&f, "1 + t^(1) + t^(2) + t^(3) + O(t^(4))"));
    let back = y.mul(&ser(&f, "1 - t^(1)")).unwrap();
    assert!(back.agrees_below(&TruncatedSeries::one(&f), &exp(&f, "4").into()).unwrap());
    assert_eq!(ser(&f, "t^(1)").inverse(None).unwrap(), ser(&f, "t^(-1)"));
    assert_eq!(ser(&f, "2").inverse(None).unwrap(), ser(&f, "1/2"));
    assert_eq!(TruncatedSeries::zero(&f).inverse(None), Err(Error::DivisionByZero));
    assert!(ser(&f, "O(t^(2))").inverse(None).is_err());
}

#[test]
fn inverse_of_truncated_input_is_capped() {
    let f = lz();
    // x = 1 - t + O(t^3): the inverse is only known below 3
    let y = ser(&f, "1 - t^(1) + O(t^(3))").inverse(Some(&exp(&f, "10").into())).unwrap();
    assert_eq!(y, ser(&f, "1 + t^(1) + t^(2) + O(t^(3))"));
}

#[test]
fn inverse_over_non_archimedean_exponents_reports_reached_precision() {
    let f = field("Q((lex[Z,Z]))");
    let x = ser(&f, "1 + t^([0,1])");
    let y = x.inverse(Some(&exp(&f, "[1,0]").into())).unwrap();
    let p = y.precision().finite().unwrap().clone();
    assert!(p < exp(&f, "[1,0]"));
    assert!(y.mul(&x).unwrap().agrees_below(&TruncatedSeries::one(&f), y.precision()).unwrap());
}

#[test]
fn residue_examples() {
    let f = lz();
    assert_eq!(ser(&f, "3 + t^(1)").residue().unwrap(), Coefficient::from(int(3)));
    assert_eq!(ser(&f, "t^(-1)").residue().unwrap(), Coefficient::zero());
    assert_eq!(ser(&f, "t^(1)").residue().unwrap(), Coefficient::zero());
    assert_eq!(ser(&f, "O(t^(1))").residue().unwrap(), Coefficient::zero());
    assert!(ser(&f, "O(t^(0))").residue().is_err());
}

/// Generalised binomial coefficient `C(1/n, k)`.
fn binom(alpha: &Rational, k: u32) -> Rational {
    (0..k).fold(int(1), |acc, j| acc * (alpha - int(j as i64)) / int(j as i64 + 1))
}

#[test]
fn fourth_root_matches_binomial_series() {
    let f = lz();
    let y = ser(&f, "1 + t^(1)").nth_root(4, Some(&exp(&f, "3").into())).unwrap();
    let alpha = rat(1, 4);
    let expected = TruncatedSeries::from_terms(
        &f,
        (0..3).map(|k| (exp(&f, &k.to_string()), Coefficient::from(binom(&alpha, k)))),
        exp(&f, "3").into(),
    )
    .unwrap();
    assert_eq!(y, expected);
    assert_eq!(y, ser(&f, "1 + 1/4*t^(1) - 3/32*t^(2) + O(t^(3))"));
    let back = y.pow(4).unwrap();
    assert!(back.agrees_below(&ser(&f, "1 + t^(1)"), &exp(&f, "3").into()).unwrap());
}

#[test]
fn root_examples() {
    let f = lz();
    assert_eq!(ser(&f, "t^(2)").nth_root(2, None).unwrap(), ser(&f, "t^(1)"));
    assert_eq!(ser(&f, "t^(1)").nth_root(2, None), Err(Error::ExponentNotDivisible(2)));
    assert_eq!(ser(&f, "2 + t^(1)").nth_root(2, None), Err(Error::NotNthPower(2)));
    assert_eq!(ser(&f, "-4").nth_root(2, None), Err(Error::NotNthPower(2)));
    assert_eq!(ser(&f, "-8*t^(3)").nth_root(3, None).unwrap(), ser(&f, "-2*t^(1)"));
    let q2 = field("Q(sqrt(2))((lex[Z]))");
    let r = ser(&q2, "2 + t^(1)").nth_root(2, None).unwrap();
    assert_eq!(r.leading().unwrap().1, Coefficient::quadratic(int(0), int(1), 2));
    assert!(r.pow(2).unwrap().agrees_below(&ser(&q2, "2 + t^(1)"), r.precision()).unwrap());
}

#[test]
fn parse_examples() {
    let f = lz();
    let x = ser(&f, "1 - t^(1)");
    assert_eq!(x.terms()[0], (exp(&f, "0"), Coefficient::from(int(1))));
    assert_eq!(x.terms()[1], (exp(&f, "1"), Coefficient::from(int(-1))));
    let g = field("Q((lex[Z,Q]))");
    let y = ser(&g, "t^([0,1/2]) + 2");
    assert_eq!(y.terms()[0], (exp(&g, "[0,0]"), Coefficient::from(int(2))));
    assert_eq!(y.terms()[1], (exp(&g, "[0,1/2]"), Coefficient::one()));
    let s = field("Q((surd(2)))");
    let z = ser(&s, "t^((1,-1))");
    assert_eq!(z.valuation().unwrap(), exp(&s, "(1,-1)"));
    assert!(z.valuation().unwrap().is_negative());
    assert!(matches!(parse_series(&f, "t^(bad"), Err(Error::Parse { .. })));
    assert!(matches!(parse_series(&g, "t^(1)"), Err(Error::Parse { .. })));
    assert!(matches!(parse_series(&f, "q(1,1)"), Err(Error::Parse { .. })));
    assert!(parse_series(&f, "1 + ").is_err());
    let q2 = field("Q(sqrt(2))((lex[Z]))");
    assert_eq!(ser(&q2, "q(1,1)*t^(2)").terms()[0].1, Coefficient::quadratic(int(1), int(1), 2));
}

#[test]
fn display_reparses() {
    for (fs, text) in [
        ("Q((lex[Z]))", "-3/2*t^(-1) + 2 - t^(3) + O(t^(5))"),
        ("Q((lex[Z,Q]))", "t^([0,-1/2]) + 7*t^([1,0])"),
        ("Q((surd(3)))", "t^((1,-1)) - 2*t^((0,1))"),
        ("Q(sqrt(5))((lex[Z]))", "q(1/2,-3)*t^(1) + 4"),
        ("Q((lex[Z]))", "0"),
        ("Q((lex[Z]))", "O(t^(2))"),
    ] {
        let f = field(fs);
        let x = ser(&f, text);
        assert_eq!(ser(&f, &x.to_string()), x, "{text}");
    }
}

const FIELDS: [&str; 4] = ["Q((lex[Z]))", "Q((lex[Z,Q]))", "Q((surd(2)))", "Q(sqrt(2))((lex[Z]))"];

fn triple(fs: &'static str) -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries, TruncatedSeries)> {
    any::<u64>().prop_map(move |seed| {
        let f = field(fs);
        let mut s = Sampler::new(seed);
        (s.series(&f), s.series(&f), s.series(&f))
    })
}

fn any_triple() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries, TruncatedSeries)> {
    prop::sample::select(FIELDS.to_vec()).prop_flat_map(triple)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms((x, y, z) in any_triple()) {
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(
            x.mul(&y.add(&z).unwrap()).unwrap(),
            x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
        );
    }

    #[test]
    fn inverse_multiplies_back((x, _, _) in any_triple()) {
        let y = x.inverse(None).unwrap();
        prop_assert_eq!(y.valuation().unwrap(), -x.valuation().unwrap());
        let target = x.default_inverse_target().unwrap().shift(&x.valuation().unwrap());
        let prod = x.mul(&y).unwrap();
        prop_assert!(prod.agrees_below(&TruncatedSeries::one(x.field()), &target).unwrap());
        prop_assert!(*prod.precision() >= target);
    }

    #[test]
    fn valuation_laws((x, y, _) in any_triple()) {
        let (vx, vy) = (x.valuation().unwrap(), y.valuation().unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().valuation().unwrap(), &vx + &vy);
        let s = x.add(&y).unwrap();
        if s.has_terms() {
            let vs = s.valuation().unwrap();
            let m = vx.clone().min(vy.clone());
            prop_assert!(vs >= m);
            if vx != vy {
                prop_assert_eq!(vs, m);
            }
        }
    }

    #[test]
    fn order_compatible((x, y, _) in any_triple()) {
        let (px, py) = (x.abs().unwrap(), y.abs().unwrap());
        prop_assert_eq!(px.add(&py).unwrap().sign().unwrap(), Sign::Positive);
        prop_assert_eq!(px.mul(&py).unwrap().sign().unwrap(), Sign::Positive);
        let c = x.compare(&y).unwrap();
        prop_assert_eq!(y.compare(&x).unwrap(), c.reverse());
        prop_assert_eq!(c == Ordering::Equal, x == y);
    }

    #[test]
    fn residue_is_a_homomorphism((x, y, _) in any_triple()) {
        let lift = |s: &TruncatedSeries| {
            let v = s.valuation().unwrap();
            if v.is_negative() { s.mul_monomial(&Coefficient::one(), &-&v) } else { s.clone() }
        };
        let (x, y) = (lift(&x), lift(&y));
        let (rx, ry) = (x.residue().unwrap(), y.residue().unwrap());
        prop_assert_eq!(x.add(&y).unwrap().residue().unwrap(), rx.add(&ry));
        prop_assert_eq!(x.mul(&y).unwrap().residue().unwrap(), rx.mul(&ry));
    }

    #[test]
    fn roots_raise_back((x, _, _) in any_triple(), n in 2u32..5) {
        // make x an n-th power at the leading term, then check y^n = x
        let v = x.valuation().unwrap();
        let lead = x.leading().unwrap().1.clone();
        let x = x.mul_monomial(&lead.inv().unwrap(), &v.scale_i(n as i64 - 1));
        let y = x.nth_root(n, None).unwrap();
        let cap = y.precision().shift(&y.valuation().unwrap().scale_i(n as i64 - 1));
        let back = y.pow_below(n, &cap).unwrap();
        prop_assert!(back.agrees_below(&x, back.precision()).unwrap());
        prop_assert!(back.precision() > &Bound::Finite(v.scale_i(n as i64)));
        if n % 2 == 0 {
            prop_assert_eq!(y.sign().unwrap(), Sign::Positive);
        }
    }

    #[test]
    fn root_failures_match_preconditions(seed in any::<u64>(), n in 2u32..5) {
        let f = field("Q((lex[Z]))");
        let mut s = Sampler::new(seed);
        let x = s.series(&f);
        match x.nth_root(n, None) {
            Ok(y) => {
                prop_assert!(y.pow(n).unwrap().agrees_below(&x, y.pow(n).unwrap().precision()).unwrap());
            }
            Err(Error::ExponentNotDivisible(_)) => prop_assert!(!x.valuation().unwrap().is_in_n_g(n)),
            Err(Error::NotNthPower(_)) => {
                prop_assert!(x.valuation().unwrap().is_in_n_g(n));
                let c = x.leading().unwrap().1.clone();
                prop_assert!(c.nth_root_in(n, None).unwrap().is_none());
            }
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }
}

#[test]
fn group_of_trivial_field_is_usable() {
    let f = Field::rationals(Group::trivial());
    let x = ser(&f, "3 + 2");
    assert_eq!(x, ser(&f, "5"));
    assert_eq!(x.inverse(None).unwrap(), ser(&f, "1/5"));
}

#[test]
fn expression_evaluation() {
    let f = lz();
    let e = |s: &str| eval_series_expr(&f, s, None).unwrap();
    assert_eq!(e("(1 + t^(1))*(1 - t^(1))"), ser(&f, "1 - t^(2)"));
    assert_eq!(e("2*(t^(-1) + 3)^2"), ser(&f, "2*t^(-2) + 12*t^(-1) + 18"));
    assert_eq!(e("-t^(1) + 1/2"), ser(&f, "1/2 - t^(1)"));
    assert_eq!(e("t^(3)/t^(1)"), ser(&f, "t^(2)"));
    assert_eq!(e("t^(1)^-2"), ser(&f, "t^(-2)"));
    let four = Bound::Finite(exp(&f, "4"));
    let y = eval_series_expr(&f, "1/(1 - t^(1))", Some(&four)).unwrap();
    assert_eq!(y, ser(&f, "1 + t^(1) + t^(2) + t^(3) + O(t^(4))"));
    assert_eq!(e("(1 + O(t^(2)))*3"), ser(&f, "3 + O(t^(2))"));
    assert!(matches!(eval_series_expr(&f, "t^(bad", None), Err(Error::Parse { .. })));
    assert!(matches!(eval_series_expr(&f, "(1 + t^(1)", None), Err(Error::Parse { .. })));
    assert_eq!(eval_series_expr(&f, "1/(0)", None), Err(Error::DivisionByZero));
    assert!(parse_series(&f, "2*3").is_err());
}
