//! Ordered abelian groups: finite lexicographic products of `Z` and `Q`
//! lines, and the dense rank-one groups `Z + Z*sqrt(d)` inside the reals.
//!
//! Lexicographic products put the most significant coordinate first, so the
//! convex subgroups are exactly the suffix subgroups. Both families are
//! handled through a common notion of *rank coordinates*: a lex product of
//! `n` lines has rank `n`, a real-embedded group has rank one, and a convex
//! subgroup is identified by the index `k` from which its elements may be
//! nonzero.

mod divisible;
pub mod surd;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Line {
    Integer,
    Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupDescriptor {
    /// Lexicographic product; index 0 is the most significant line.
    LexProduct(Vec<Line>),
    /// `{a + b*sqrt(d) : a, b in Z}` ordered as a subgroup of the reals.
    RealEmbedded { d: u64 },
}

/// Shared handle on a group descriptor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Group(Arc<GroupDescriptor>);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Coords {
    Lex(Vec<Rational>),
    Real(BigInt, BigInt),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: Group,
    coords: Coords,
}

/// The convex subgroup of elements whose rank coordinates before `start` vanish.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexSubgroup {
    group: Group,
    start: usize,
}

impl Group {
    pub fn new(desc: GroupDescriptor) -> Result<Self> {
        if let GroupDescriptor::RealEmbedded { d } = desc {
            if d < 2 || !surd::is_square_free(d) {
                return Err(Error::InvalidDescriptor(format!("surd({d}): d must be square-free and at least 2")));
            }
        }
        Ok(Group(Arc::new(desc)))
    }

    pub fn lex(lines: impl IntoIterator<Item = Line>) -> Self {
        Group(Arc::new(GroupDescriptor::LexProduct(lines.into_iter().collect())))
    }

    pub fn real_embedded(d: u64) -> Result<Self> {
        Self::new(GroupDescriptor::RealEmbedded { d })
    }

    /// The trivial group `lex[]`.
    pub fn trivial() -> Self {
        Self::lex([])
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.0
    }

    pub fn lines(&self) -> Option<&[Line]> {
        match &*self.0 {
            GroupDescriptor::LexProduct(l) => Some(l),
            GroupDescriptor::RealEmbedded { .. } => None,
        }
    }

    pub fn surd_d(&self) -> Option<u64> {
        match &*self.0 {
            GroupDescriptor::RealEmbedded { d } => Some(*d),
            GroupDescriptor::LexProduct(_) => None,
        }
    }

    /// Number of rank coordinates (length of the chain of convex subgroups minus one).
    pub fn rank(&self) -> usize {
        match &*self.0 {
            GroupDescriptor::LexProduct(l) => l.len(),
            GroupDescriptor::RealEmbedded { .. } => 1,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 0
    }

    pub fn zero(&self) -> GroupElement {
        let coords = match &*self.0 {
            GroupDescriptor::LexProduct(l) => Coords::Lex(vec![Rational::zero(); l.len()]),
            GroupDescriptor::RealEmbedded { .. } => Coords::Real(BigInt::zero(), BigInt::zero()),
        };
        GroupElement { group: self.clone(), coords }
    }

    pub fn lex_element(&self, coords: Vec<Rational>) -> Result<GroupElement> {
        let lines = self.lines().ok_or_else(|| Error::DescriptorMismatch(format!("{self} is not a lex product")))?;
        if lines.len() != coords.len() {
            return Err(Error::DescriptorMismatch(format!("{} coordinates for {self}", coords.len())));
        }
        for (i, (line, c)) in lines.iter().zip(&coords).enumerate() {
            if *line == Line::Integer && !c.is_integer() {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {i} of {self} must be an integer, got {}",
                    fmt_rational(c)
                )));
            }
        }
        Ok(GroupElement { group: self.clone(), coords: Coords::Lex(coords) })
    }

    /// Convenience constructor from small integers.
    pub fn lex_ints(&self, coords: &[i64]) -> Result<GroupElement> {
        self.lex_element(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn real_element(&self, a: BigInt, b: BigInt) -> Result<GroupElement> {
        if self.surd_d().is_none() {
            return Err(Error::DescriptorMismatch(format!("{self} is not real-embedded")));
        }
        Ok(GroupElement { group: self.clone(), coords: Coords::Real(a, b) })
    }

    /// The unit step: `(0,..,0,1)` for a lex product, `1` for a real-embedded group.
    pub fn unit(&self) -> Option<GroupElement> {
        match &*self.0 {
            GroupDescriptor::LexProduct(l) if l.is_empty() => None,
            GroupDescriptor::LexProduct(l) => {
                let mut c = vec![Rational::zero(); l.len()];
                c[l.len() - 1] = Rational::one();
                Some(GroupElement { group: self.clone(), coords: Coords::Lex(c) })
            }
            GroupDescriptor::RealEmbedded { .. } => {
                Some(GroupElement { group: self.clone(), coords: Coords::Real(BigInt::one(), BigInt::zero()) })
            }
        }
    }

    /// Least positive element, present exactly for lex products ending in `Z`.
    pub fn least_positive(&self) -> Option<GroupElement> {
        match &*self.0 {
            GroupDescriptor::LexProduct(l) if l.last() == Some(&Line::Integer) => self.unit(),
            _ => None,
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.least_positive().is_some()
    }

    pub fn is_divisible(&self) -> bool {
        match &*self.0 {
            GroupDescriptor::LexProduct(l) => l.iter().all(|&x| x == Line::Rational),
            GroupDescriptor::RealEmbedded { .. } => false,
        }
    }

    pub fn ensure_same(&self, other: &Group) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(format!("{self} vs {other}")))
        }
    }

    pub fn subgroup(&self, start: usize) -> Result<ConvexSubgroup> {
        if start > self.rank() {
            return Err(Error::InvalidArgument(format!("suffix start {start} exceeds rank {} of {self}", self.rank())));
        }
        Ok(ConvexSubgroup { group: self.clone(), start })
    }

    pub fn trivial_subgroup(&self) -> ConvexSubgroup {
        ConvexSubgroup { group: self.clone(), start: self.rank() }
    }

    pub fn full_subgroup(&self) -> ConvexSubgroup {
        ConvexSubgroup { group: self.clone(), start: 0 }
    }

    /// Smallest convex subgroup containing `gamma`.
    pub fn minimal_convex_containing(&self, gamma: &GroupElement) -> Result<ConvexSubgroup> {
        self.ensure_same(&gamma.group)?;
        let k = gamma.leading_index().ok_or_else(|| Error::InvalidArgument("gamma must be nonzero".into()))?;
        self.subgroup(k)
    }

    /// Maximal `p`-divisible convex subgroup: the longest suffix of `Q` lines.
    pub fn max_p_divisible_convex(&self, p: u32) -> Result<ConvexSubgroup> {
        check_prime(p)?;
        Ok(match &*self.0 {
            GroupDescriptor::LexProduct(l) => {
                let tail = l.iter().rev().take_while(|&&x| x == Line::Rational).count();
                ConvexSubgroup { group: self.clone(), start: l.len() - tail }
            }
            GroupDescriptor::RealEmbedded { .. } => self.trivial_subgroup(),
        })
    }

    /// The group `G/C`. For a lex product this keeps the lines before the suffix.
    pub fn quotient(&self, c: &ConvexSubgroup) -> Result<Group> {
        self.ensure_same(&c.group)?;
        Ok(match &*self.0 {
            GroupDescriptor::LexProduct(l) => Group::lex(l[..c.start].iter().copied()),
            GroupDescriptor::RealEmbedded { .. } if c.start == 0 => Group::trivial(),
            GroupDescriptor::RealEmbedded { .. } => self.clone(),
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(body) = t.strip_prefix("lex[").and_then(|r| r.strip_suffix(']')) {
            if body.is_empty() {
                return Ok(Group::trivial());
            }
            let mut lines = Vec::new();
            for (i, part) in body.split(',').enumerate() {
                lines.push(match part {
                    "Z" => Line::Integer,
                    "Q" => Line::Rational,
                    other => return Err(Error::parse(i, format!("unknown line {other:?}, expected Z or Q"))),
                });
            }
            return Ok(Group::lex(lines));
        }
        if let Some(body) = t.strip_prefix("surd(").and_then(|r| r.strip_suffix(')')) {
            let d: u64 = body.parse().map_err(|_| Error::parse(5, format!("bad surd parameter {body:?}")))?;
            return Group::real_embedded(d);
        }
        Err(Error::parse(0, format!("unknown group descriptor {text:?}")))
    }

    /// Parses `[1,-2/3,0]`, `(a,b)`, or a bare rational for rank-one lex products.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(body) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coords = if body.is_empty() {
                Vec::new()
            } else {
                body.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?
            };
            return self.lex_element(coords);
        }
        if let Some(body) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (a, b) =
                body.split_once(',').ok_or_else(|| Error::parse(0, format!("expected (a,b), got {text:?}")))?;
            let a: BigInt = a.parse().map_err(|_| Error::parse(1, "bad integer"))?;
            let b: BigInt = b.parse().map_err(|_| Error::parse(1, "bad integer"))?;
            return self.real_element(a, b);
        }
        let q = parse_rational(&t)?;
        match &*self.0 {
            GroupDescriptor::LexProduct(l) if l.len() == 1 => self.lex_element(vec![q]),
            GroupDescriptor::RealEmbedded { .. } if q.is_integer() => self.real_element(q.to_integer(), BigInt::zero()),
            _ => Err(Error::DescriptorMismatch(format!("bare rational {text:?} for {self}"))),
        }
    }

    /// Returns `eta` in `nG` with `|tau - eta| < eps`, using powers of the
    /// fundamental unit below one as a null sequence.
    pub fn dense_approx_witness(&self, n: u32, tau: &GroupElement, eps: &GroupElement) -> Result<GroupElement> {
        let d = self.surd_d().ok_or_else(|| Error::NotDense(format!("{self} is not a dense family")))?;
        self.ensure_same(&tau.group)?;
        self.ensure_same(&eps.group)?;
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if !eps.is_positive() {
            return Err(Error::InvalidArgument("eps must be positive".into()));
        }
        let w1 = surd::small_unit(d);
        let nn = BigInt::from(n);
        // w = w1^k with n*w < eps; inverse of w is u^k.
        let mut w = (BigInt::one(), BigInt::zero());
        let u1 = surd::fundamental_unit(d);
        let u1 = if surd::mul(&u1, &w1, d) == (BigInt::one(), BigInt::zero()) { u1 } else { (-u1.0, -u1.1) };
        let mut winv = (BigInt::one(), BigInt::zero());
        let (ea, eb) = eps.real_parts();
        loop {
            let (wa, wb) = (&w.0 * &nn, &w.1 * &nn);
            if surd::sign(&(ea - wa), &(eb - wb), d) == Ordering::Greater {
                break;
            }
            w = surd::mul(&w, &w1, d);
            winv = surd::mul(&winv, &u1, d);
        }
        let (ta, tb) = tau.real_parts();
        let scaled = surd::mul(&(ta.clone(), tb.clone()), &winv, d);
        let c = crate::rational::floor_surd(&scaled.0, &scaled.1, d).div_floor(&nn);
        let eta = self.real_element(&w.0 * &c * &nn, &w.1 * &c * &nn)?;
        debug_assert!(eta.is_in_n_g(n));
        Ok(eta)
    }
}

fn check_prime(p: u32) -> Result<()> {
    if p < 2 || (2..p).take_while(|f| f * f <= p).any(|f| p.is_multiple_of(f)) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(())
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            GroupDescriptor::LexProduct(l) => {
                let parts: Vec<&str> = l
                    .iter()
                    .map(|x| match x {
                        Line::Integer => "Z",
                        Line::Rational => "Q",
                    })
                    .collect();
                write!(f, "lex[{}]", parts.join(","))
            }
            GroupDescriptor::RealEmbedded { d } => write!(f, "surd({d})"),
        }
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl GroupElement {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn lex_coords(&self) -> Option<&[Rational]> {
        match &self.coords {
            Coords::Lex(c) => Some(c),
            Coords::Real(..) => None,
        }
    }

    fn real_parts(&self) -> (&BigInt, &BigInt) {
        match &self.coords {
            Coords::Real(a, b) => (a, b),
            Coords::Lex(_) => unreachable!("checked by caller"),
        }
    }

    /// `(a, b)` for an element `a + b*sqrt(d)`.
    pub fn surd_coords(&self) -> Option<(&BigInt, &BigInt)> {
        match &self.coords {
            Coords::Real(a, b) => Some((a, b)),
            Coords::Lex(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.coords {
            Coords::Lex(c) => c.iter().all(Zero::is_zero),
            Coords::Real(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    /// Index of the first nonzero rank coordinate, `None` for zero.
    pub fn leading_index(&self) -> Option<usize> {
        match &self.coords {
            Coords::Lex(c) => c.iter().position(|x| !x.is_zero()),
            Coords::Real(..) => (!self.is_zero()).then_some(0),
        }
    }

    pub fn signum(&self) -> Ordering {
        match &self.coords {
            Coords::Lex(c) => c.iter().find(|x| !x.is_zero()).map_or(Ordering::Equal, |x| x.cmp(&Rational::zero())),
            Coords::Real(a, b) => surd::sign(a, b, self.group.surd_d().unwrap()),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        self.group.ensure_same(&other.group)?;
        Ok(self.value_cmp(other))
    }

    fn value_cmp(&self, other: &Self) -> Ordering {
        match (&self.coords, &other.coords) {
            (Coords::Lex(a), Coords::Lex(b)) => a.cmp(b),
            (Coords::Real(a1, b1), Coords::Real(a2, b2)) => {
                surd::sign(&(a1 - a2), &(b1 - b2), self.group.surd_d().unwrap())
            }
            _ => unreachable!("same group"),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let coords = match (&self.coords, &other.coords) {
            (Coords::Lex(a), Coords::Lex(b)) => Coords::Lex(a.iter().zip(b).map(|(x, y)| f(x, y)).collect()),
            (Coords::Real(a1, b1), Coords::Real(a2, b2)) => {
                let g = |x: &BigInt, y: &BigInt| f(&Rational::from(x.clone()), &Rational::from(y.clone())).to_integer();
                Coords::Real(g(a1, a2), g(b1, b2))
            }
            _ => unreachable!("same group"),
        };
        GroupElement { group: self.group.clone(), coords }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        Ok(self.zip(other, |x, y| x + y))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.group.ensure_same(&other.group)?;
        Ok(self.zip(other, |x, y| x - y))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let coords = match &self.coords {
            Coords::Lex(c) => Coords::Lex(c.iter().map(|x| x * Rational::from(k.clone())).collect()),
            Coords::Real(a, b) => Coords::Real(a * k, b * k),
        };
        GroupElement { group: self.group.clone(), coords }
    }

    pub fn scale_i(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// `self / n` when the quotient lies in the group.
    pub fn divide_exact(&self, n: u32) -> Option<Self> {
        let nn = BigInt::from(n);
        let coords = match &self.coords {
            Coords::Lex(c) => {
                let lines = self.group.lines().unwrap();
                let mut out = Vec::with_capacity(c.len());
                for (x, line) in c.iter().zip(lines) {
                    let q = x / Rational::from(nn.clone());
                    if *line == Line::Integer && !q.is_integer() {
                        return None;
                    }
                    out.push(q);
                }
                Coords::Lex(out)
            }
            Coords::Real(a, b) => {
                if !a.is_multiple_of(&nn) || !b.is_multiple_of(&nn) {
                    return None;
                }
                Coords::Real(a / &nn, b / &nn)
            }
        };
        Some(GroupElement { group: self.group.clone(), coords })
    }

    /// Whether `self = n*y` for some `y` in the group.
    pub fn is_in_n_g(&self, n: u32) -> bool {
        self.divide_exact(n).is_some()
    }

    /// Image in `G/C`, where `C` is the convex subgroup starting at rank index `k`.
    pub fn project(&self, c: &ConvexSubgroup) -> Result<GroupElement> {
        self.group.ensure_same(&c.group)?;
        let q = self.group.quotient(c)?;
        let coords = match &self.coords {
            Coords::Lex(v) => Coords::Lex(v[..c.start].to_vec()),
            Coords::Real(..) if c.start == 0 => Coords::Lex(Vec::new()),
            Coords::Real(a, b) => Coords::Real(a.clone(), b.clone()),
        };
        Ok(GroupElement { group: q, coords })
    }

    /// Approximate real value of a real-embedded element, for display only.
    pub fn approx_f64(&self) -> Option<f64> {
        use num_traits::ToPrimitive;
        let (a, b) = self.surd_coords()?;
        let d = self.group.surd_d()? as f64;
        Some(a.to_f64()? + b.to_f64()? * d.sqrt())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coords {
            Coords::Lex(c) => {
                let parts: Vec<String> = c.iter().map(fmt_rational).collect();
                write!(f, "[{}]", parts.join(","))
            }
            Coords::Real(a, b) => write!(f, "({a},{b})"),
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Orders by descriptor first, then by the group order. Within one group this
/// is the group order.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.group.cmp(&other.group).then_with(|| self.value_cmp(other))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl std::ops::$tr<&GroupElement> for &GroupElement {
            type Output = GroupElement;
            /// Panics on a descriptor mismatch; use the `try_` form to recover.
            fn $m(self, rhs: &GroupElement) -> GroupElement {
                self.$try(rhs).expect("group element descriptor mismatch")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);

impl std::ops::Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        self.scale_i(-1)
    }
}

impl std::ops::Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        -&self
    }
}

impl ConvexSubgroup {
    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Rank index from which elements may be nonzero.
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_trivial(&self) -> bool {
        self.start == self.group.rank()
    }

    pub fn is_full(&self) -> bool {
        self.start == 0
    }

    pub fn contains(&self, x: &GroupElement) -> Result<bool> {
        self.group.ensure_same(&x.group)?;
        Ok(x.leading_index().is_none_or(|i| i >= self.start))
    }

    /// Inclusion of convex subgroups of the same group.
    pub fn is_subgroup_of(&self, other: &ConvexSubgroup) -> Result<bool> {
        self.group.ensure_same(&other.group)?;
        Ok(self.start >= other.start)
    }
}

impl fmt::Display for ConvexSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group.descriptor() {
            GroupDescriptor::RealEmbedded { .. } if self.is_full() => write!(f, "full"),
            GroupDescriptor::RealEmbedded { .. } => write!(f, "trivial"),
            GroupDescriptor::LexProduct(_) => write!(f, "suffix {}", self.start),
        }
    }
}
