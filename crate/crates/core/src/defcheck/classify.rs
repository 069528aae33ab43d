use std::fmt;

use serde_json::Value;

use crate::hahn::CoefficientField;
use crate::oag::GroupElement;
use crate::ovf::{classify_value_group, ValuationSpec};
use crate::report::{CheckReport, Failure};

/// Sufficient conditions under which the valuation ring has an explicit definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DefinabilityCase {
    /// Value group with a least positive element: `M = { x : |x^2/b| < 1 }`.
    Discrete,
    /// Value group not closed in its divisible hull, with witness `(gamma, n)`.
    NotClosedInDivisibleHull { gamma: GroupElement, n: u32 },
    /// Residue field dense in its real closure but not real closed.
    ResidueDenseNotRealClosed,
    /// Value group `p`-regular but not `p`-divisible.
    PRegularNotPDivisible { p: u32 },
}

impl DefinabilityCase {
    /// The check that exercises this case, where there is one.
    pub fn check_name(&self) -> Option<&'static str> {
        match self {
            DefinabilityCase::Discrete => Some("thm-i"),
            DefinabilityCase::NotClosedInDivisibleHull { .. } => Some("thm-ii"),
            DefinabilityCase::ResidueDenseNotRealClosed => Some("thm-iii"),
            DefinabilityCase::PRegularNotPDivisible { .. } => None,
        }
    }
}

impl fmt::Display for DefinabilityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefinabilityCase::Discrete => write!(f, "discrete"),
            DefinabilityCase::NotClosedInDivisibleHull { gamma, n } => {
                write!(f, "not-closed-in-divisible-hull(gamma={gamma},n={n})")
            }
            DefinabilityCase::ResidueDenseNotRealClosed => write!(f, "residue-dense-not-real-closed"),
            DefinabilityCase::PRegularNotPDivisible { p } => write!(f, "p-regular-not-p-divisible(p={p})"),
        }
    }
}

/// Lists every applicable case. `Q` and `Q(sqrt d)` count as dense in their
/// real closure and not real closed; the real-closed model counts as real
/// closed. The residue field case is only claimed for the canonical valuation
/// with a nontrivial value group, where the residue field is the coefficient field.
pub fn cor32_classifier(spec: &ValuationSpec) -> Vec<DefinabilityCase> {
    let mut cases = Vec::new();
    if spec.value_group().is_trivial() {
        return cases;
    }
    let c = classify_value_group(spec);
    if c.discrete {
        cases.push(DefinabilityCase::Discrete);
    }
    if let Some((gamma, n)) = c.not_closed_in_divisible_hull {
        cases.push(DefinabilityCase::NotClosedInDivisibleHull { gamma, n });
    }
    let residue_ok =
        matches!(spec.field().coefficients(), CoefficientField::Rationals | CoefficientField::QuadraticExtension(_));
    if spec.is_canonical() && residue_ok {
        cases.push(DefinabilityCase::ResidueDenseNotRealClosed);
    }
    if let Some(p) = c.p_regular_not_p_divisible {
        cases.push(DefinabilityCase::PRegularNotPDivisible { p });
    }
    cases
}

/// The classifier's answer as a report, with consistency checks against the
/// group classification.
pub fn cor32_report(spec: &ValuationSpec, seed: u64) -> CheckReport {
    let cases = cor32_classifier(spec);
    let c = classify_value_group(spec);
    let mut report = CheckReport::new("cor32", seed, 1);
    report.param("field", spec.field()).param("subgroup", spec.subgroup());
    report.detail("cases", Value::Array(cases.iter().map(|k| Value::String(k.to_string())).collect()));
    let has = |f: &dyn Fn(&DefinabilityCase) -> bool| cases.iter().any(f);
    let discrete = has(&|k| *k == DefinabilityCase::Discrete);
    report.expect(discrete == spec.value_group().least_positive().is_some() || spec.value_group().is_trivial(), || {
        Failure::new("discrete case", "matches least positive element", format!("{discrete}"))
    });
    let hull = has(&|k| matches!(k, DefinabilityCase::NotClosedInDivisibleHull { .. }));
    report.expect(hull == c.not_closed_in_divisible_hull.is_some() || spec.value_group().is_trivial(), || {
        Failure::new("hull case", "matches classification witness", format!("{hull}"))
    });
    report.expect(!(c.divisible && has(&|k| matches!(k, DefinabilityCase::PRegularNotPDivisible { .. }))), || {
        Failure::new("p-regular case", "absent for divisible groups", "present")
    });
    report
}
