use std::fmt;
use std::sync::Arc;

use super::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::oag::{surd, Group};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientField {
    Rationals,
    QuadraticExtension(u64),
    /// Exact arithmetic over `Q`, but `n`-th root existence is answered as in
    /// a real closed field: every positive element has all roots.
    RationalsAsRealClosedModel,
}

impl CoefficientField {
    pub fn surd(&self) -> Option<u64> {
        match self {
            CoefficientField::QuadraticExtension(d) => Some(*d),
            _ => None,
        }
    }

    pub fn is_real_closed_model(&self) -> bool {
        matches!(self, CoefficientField::RationalsAsRealClosedModel)
    }

    pub fn admits(&self, c: &Coefficient) -> bool {
        match c {
            Coefficient::Rational(_) => true,
            Coefficient::Quadratic { d, .. } => self.surd() == Some(*d),
        }
    }

    /// Whether `c` has an `n`-th root in the field this descriptor stands for.
    pub fn has_nth_root(&self, c: &Coefficient, n: u32) -> Result<bool> {
        if self.is_real_closed_model() {
            return Ok(c.is_zero() || c.is_positive() || n % 2 == 1);
        }
        Ok(c.nth_root_in(n, self.surd())?.is_some())
    }

    /// The `n`-th root when it is representable exactly (positive for even `n`).
    pub fn nth_root(&self, c: &Coefficient, n: u32) -> Result<Coefficient> {
        if !self.has_nth_root(c, n)? {
            return Err(Error::NotNthPower(n));
        }
        match c.nth_root_in(n, self.surd())? {
            Some(r) => Ok(r),
            None => Err(Error::Unrepresentable(format!("{n}-th root of {c}"))),
        }
    }

    fn parse(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        match t.as_str() {
            "Q" => return Ok(CoefficientField::Rationals),
            "Rmodel" => return Ok(CoefficientField::RationalsAsRealClosedModel),
            _ => {}
        }
        let inner = t
            .strip_prefix("Q(sqrt(")
            .and_then(|r| r.strip_suffix("))"))
            .or_else(|| t.strip_prefix("Q(√").and_then(|r| r.strip_suffix(')')));
        if let Some(d) = inner {
            let d: u64 = d.parse().map_err(|_| Error::parse(0, format!("bad quadratic field {text:?}")))?;
            if d < 2 || !surd::is_square_free(d) {
                return Err(Error::InvalidDescriptor(format!("Q(sqrt({d})): d must be square-free and at least 2")));
            }
            return Ok(CoefficientField::QuadraticExtension(d));
        }
        Err(Error::parse(0, format!("unknown coefficient field {text:?}")))
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "Q"),
            CoefficientField::QuadraticExtension(d) => write!(f, "Q(sqrt({d}))"),
            CoefficientField::RationalsAsRealClosedModel => write!(f, "Rmodel"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    pub coefficients: CoefficientField,
    pub value_group: Group,
}

/// Shared handle on the Hahn field `k((G))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldDescriptor>);

impl Field {
    pub fn new(coefficients: CoefficientField, value_group: Group) -> Self {
        Field(Arc::new(FieldDescriptor { coefficients, value_group }))
    }

    pub fn rationals(value_group: Group) -> Self {
        Self::new(CoefficientField::Rationals, value_group)
    }

    pub fn coefficients(&self) -> CoefficientField {
        self.0.coefficients
    }

    pub fn group(&self) -> &Group {
        &self.0.value_group
    }

    pub fn ensure_same(&self, other: &Field) -> Result<()> {
        if Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0 {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(format!("{self} vs {other}")))
        }
    }

    /// Parses `Q((lex[Z]))`, `Q(sqrt(2))((lex[Z]))`, `Rmodel((lex[Q]))`, `Q((surd(2)))`.
    pub fn parse(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let open = t.find("((").ok_or_else(|| Error::parse(0, format!("expected k((G)), got {text:?}")))?;
        let body = t[open + 2..].strip_suffix("))").ok_or_else(|| Error::parse(t.len(), "missing closing '))'"))?;
        let k = CoefficientField::parse(&t[..open])?;
        let g = Group::parse(body)?;
        Ok(Field::new(k, g))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(({}))", self.0.coefficients, self.0.value_group)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
