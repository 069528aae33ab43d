use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::coeff::Coefficient;
use super::field::Field;
use crate::error::{Error, Result};
use crate::oag::GroupElement;

/// Precision of a truncated series: every term at an exponent below the
/// bound is known exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(GroupElement),
    Infinite,
}

impl Bound {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Bound::Infinite)
    }

    /// `g < self`
    pub fn exceeds(&self, g: &GroupElement) -> bool {
        match self {
            Bound::Infinite => true,
            Bound::Finite(b) => g < b,
        }
    }

    pub fn shift(&self, g: &GroupElement) -> Bound {
        match self {
            Bound::Infinite => Bound::Infinite,
            Bound::Finite(b) => Bound::Finite(b + g),
        }
    }

    pub fn plus(&self, other: &Bound) -> Bound {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => Bound::Finite(a + b),
            _ => Bound::Infinite,
        }
    }

    pub fn finite(&self) -> Option<&GroupElement> {
        match self {
            Bound::Finite(g) => Some(g),
            Bound::Infinite => None,
        }
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Bound::Infinite, Bound::Infinite) => Ordering::Equal,
            (Bound::Infinite, _) => Ordering::Greater,
            (_, Bound::Infinite) => Ordering::Less,
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<GroupElement> for Bound {
    fn from(g: GroupElement) -> Self {
        Bound::Finite(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        }
    }
}

/// A Hahn series known exactly below `precision`.
///
/// Terms are sorted by strictly increasing exponent, have nonzero
/// coefficients and exponents below the precision. The exact zero has no
/// terms and infinite precision; a series with no terms and finite precision
/// `p` stands for an unknown element of valuation at least `p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    field: Field,
    terms: Vec<(GroupElement, Coefficient)>,
    precision: Bound,
}

impl TruncatedSeries {
    pub fn zero(field: &Field) -> Self {
        TruncatedSeries { field: field.clone(), terms: Vec::new(), precision: Bound::Infinite }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, Coefficient::one())
    }

    pub fn constant(field: &Field, c: Coefficient) -> Self {
        Self::monomial(field, c, field.group().zero())
    }

    pub fn monomial(field: &Field, c: Coefficient, exponent: GroupElement) -> Self {
        assert!(field.coefficients().admits(&c), "coefficient {c} outside {field}");
        assert_eq!(exponent.group(), field.group(), "exponent outside {field}");
        let terms = if c.is_zero() { Vec::new() } else { vec![(exponent, c)] };
        TruncatedSeries { field: field.clone(), terms, precision: Bound::Infinite }
    }

    /// `t^g`
    pub fn t_pow(field: &Field, exponent: GroupElement) -> Self {
        Self::monomial(field, Coefficient::one(), exponent)
    }

    /// An unknown element `O(t^p)`.
    pub fn big_o(field: &Field, p: GroupElement) -> Self {
        TruncatedSeries { field: field.clone(), terms: Vec::new(), precision: Bound::Finite(p) }
    }

    pub fn from_terms(
        field: &Field,
        terms: impl IntoIterator<Item = (GroupElement, Coefficient)>,
        precision: Bound,
    ) -> Result<Self> {
        let mut acc: BTreeMap<GroupElement, Coefficient> = BTreeMap::new();
        for (e, c) in terms {
            field.group().ensure_same(e.group())?;
            if !field.coefficients().admits(&c) {
                return Err(Error::DescriptorMismatch(format!("coefficient {c} outside {field}")));
            }
            if let Some(p) = precision.finite() {
                field.group().ensure_same(p.group())?;
            }
            let slot = acc.entry(e).or_insert_with(Coefficient::zero);
            *slot = slot.add(&c);
        }
        Ok(Self::from_map(field, acc, precision))
    }

    fn from_map(field: &Field, acc: BTreeMap<GroupElement, Coefficient>, precision: Bound) -> Self {
        let terms = acc.into_iter().filter(|(e, c)| !c.is_zero() && precision.exceeds(e)).collect();
        TruncatedSeries { field: field.clone(), terms, precision }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &[(GroupElement, Coefficient)] {
        &self.terms
    }

    pub fn precision(&self) -> &Bound {
        &self.precision
    }

    pub fn has_terms(&self) -> bool {
        !self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_infinite()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.precision.is_infinite()
    }

    pub fn leading(&self) -> Option<&(GroupElement, Coefficient)> {
        self.terms.first()
    }

    /// Coefficient at `g`, when `g` lies below the precision.
    pub fn coefficient_at(&self, g: &GroupElement) -> Result<Coefficient> {
        if !self.precision.exceeds(g) {
            return Err(Error::precision(format!("coefficient at {g} not known")));
        }
        Ok(self.terms.iter().find(|(e, _)| e == g).map_or_else(Coefficient::zero, |(_, c)| c.clone()))
    }

    /// Drops everything at or above `bound`.
    pub fn truncate(&self, bound: &Bound) -> Self {
        let precision = self.precision.clone().min(bound.clone());
        let terms = self.terms.iter().filter(|(e, _)| precision.exceeds(e)).cloned().collect();
        TruncatedSeries { field: self.field.clone(), terms, precision }
    }

    /// Forgets the precision: the known terms are taken as the exact element.
    pub(crate) fn as_exact(&self) -> Self {
        TruncatedSeries { precision: Bound::Infinite, ..self.clone() }
    }

    pub fn valuation(&self) -> Result<GroupElement> {
        match (self.terms.first(), &self.precision) {
            (Some((e, _)), _) => Ok(e.clone()),
            (None, Bound::Infinite) => Err(Error::ZeroValuation),
            (None, Bound::Finite(p)) => Err(Error::precision(format!("no known terms below {p}; valuation undecided"))),
        }
    }

    /// The valuation, or the precision when no term is known; infinite for zero.
    pub fn valuation_lower_bound(&self) -> Bound {
        match self.terms.first() {
            Some((e, _)) => Bound::Finite(e.clone()),
            None => self.precision.clone(),
        }
    }

    pub fn sign(&self) -> Result<Sign> {
        match (self.terms.first(), &self.precision) {
            (Some((_, c)), _) => Ok(Sign::from_ordering(c.signum())),
            (None, Bound::Infinite) => Ok(Sign::Zero),
            (None, Bound::Finite(p)) => Err(Error::precision(format!("no known terms below {p}; sign undecided"))),
        }
    }

    /// Residue in the coefficient field, with `0` for elements of negative valuation.
    pub fn residue(&self) -> Result<Coefficient> {
        let zero = self.field.group().zero();
        match self.terms.first() {
            Some((e, _)) if e.is_negative() => Ok(Coefficient::zero()),
            Some(_) => self.coefficient_at(&zero),
            None if self.precision.is_infinite() => Ok(Coefficient::zero()),
            None => match &self.precision {
                Bound::Finite(p) if p.is_positive() => Ok(Coefficient::zero()),
                _ => Err(Error::precision("residue undecided: no known terms")),
            },
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            precision: self.precision.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.field.ensure_same(&other.field)?;
        let precision = self.precision.clone().min(other.precision.clone());
        let mut acc: BTreeMap<GroupElement, Coefficient> = BTreeMap::new();
        for (e, c) in self.terms.iter().chain(&other.terms) {
            if precision.exceeds(e) {
                let slot = acc.entry(e.clone()).or_insert_with(Coefficient::zero);
                *slot = slot.add(c);
            }
        }
        Ok(Self::from_map(&self.field, acc, precision))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_below(other, &Bound::Infinite)
    }

    /// Product, additionally truncated below `cap`.
    ///
    /// The precision of `xy` is `min(p_x + v(y), p_y + v(x))`, reading `v` of a
    /// series without known terms as its precision.
    pub fn mul_below(&self, other: &Self, cap: &Bound) -> Result<Self> {
        self.field.ensure_same(&other.field)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Self::zero(&self.field));
        }
        let precision = self
            .precision
            .plus(&other.valuation_lower_bound())
            .min(other.precision.plus(&self.valuation_lower_bound()))
            .min(cap.clone());
        let mut acc: BTreeMap<GroupElement, Coefficient> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if !precision.exceeds(&e) {
                    // exponents of `other` increase, so the rest of the row is out too
                    break;
                }
                let slot = acc.entry(e).or_insert_with(Coefficient::zero);
                *slot = slot.add(&c1.mul(c2));
            }
        }
        Ok(Self::from_map(&self.field, acc, precision))
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        self.mul_monomial(c, &self.field.group().zero())
    }

    /// `c * t^g * self`
    pub fn mul_monomial(&self, c: &Coefficient, g: &GroupElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field);
        }
        TruncatedSeries {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, a)| (e + g, a.mul(c))).collect(),
            precision: self.precision.shift(g),
        }
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        self.pow_below(k, &Bound::Infinite)
    }

    /// `self^k` truncated below `cap`.
    pub fn pow_below(&self, k: u32, cap: &Bound) -> Result<Self> {
        // work with valuation zero so that intermediate truncations do not
        // drop terms of the final power
        let (unit, shift) = match self.leading() {
            Some((v, _)) if !v.is_zero() => (self.mul_monomial(&Coefficient::one(), &-v), v.scale_i(k as i64)),
            _ => (self.clone(), self.field.group().zero()),
        };
        let rel = cap.shift(&-&shift);
        let mut acc = Self::one(&self.field).truncate(&rel);
        for _ in 0..k {
            acc = acc.mul_below(&unit, &rel)?;
        }
        Ok(acc.mul_monomial(&Coefficient::one(), &shift))
    }

    /// Order comparison via the sign of the difference.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        Ok(match self.sub(other)?.sign()? {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        })
    }

    pub fn abs(&self) -> Result<Self> {
        Ok(match self.sign()? {
            Sign::Negative => self.neg(),
            _ => self.clone(),
        })
    }

    /// Whether `self` and `other` agree on every exponent below `bound` where
    /// both are known.
    pub fn agrees_below(&self, other: &Self, bound: &Bound) -> Result<bool> {
        let diff = self.sub(other)?;
        Ok(!diff.truncate(bound).has_terms())
    }

    /// Smallest positive difference between the leading exponent and the next
    /// known exponent, used to size default precisions over dense groups.
    pub(crate) fn leading_gap(&self) -> Option<GroupElement> {
        match self.terms.as_slice() {
            [(e0, _), (e1, _), ..] => Some(e1 - e0),
            _ => None,
        }
    }

    pub fn is_dense_field(&self) -> bool {
        let g = self.field.group();
        !g.is_trivial() && !g.is_discrete()
    }
}

pub(crate) fn fmt_exponent(g: &GroupElement) -> String {
    match g.lex_coords() {
        Some([single]) => crate::rational::fmt_rational(single),
        _ => g.to_string(),
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            let negative =
                matches!(c, Coefficient::Rational(q) if q < &num_rational::BigRational::from_integer(0.into()));
            let mag = if negative { c.neg() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "t^({})", fmt_exponent(e))?;
            } else {
                write!(f, "{mag}*t^({})", fmt_exponent(e))?;
            }
        }
        if let Bound::Finite(p) = &self.precision {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "O(t^({}))", fmt_exponent(p))?;
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}
