//! Checkers for the explicit definitions of valuation rings, each pairing the
//! defining formula with the witnesses used to show it is correct.
//!
//! Containments quantified over the whole field are never decided; they are
//! checked on sampled instances plus exact counterexample witnesses.

mod classify;
mod density;
mod groups;
mod thm_i;
mod thm_ii;
mod thm_iii;

pub use classify::{cor32_classifier, cor32_report, DefinabilityCase};
pub use density::{density_convex_hull_check, density_phi_member, density_phi_scan};
pub use groups::{delta_gamma_report, vp_report};
pub use thm_i::{check_thm_i, default_b_thm_i, thm_i_formula};
pub use thm_ii::{check_thm_ii, s_b_member, s_b_member_order, select_param_ii};
pub use thm_iii::{check_thm_iii, residue_sign_witness, ThmIIIInstance};

use crate::error::{Error, Result};
use crate::hahn::{Field, Sign, TruncatedSeries};
use crate::oag::{Group, GroupElement};
use crate::sample::Sampler;

/// Lifts an element of a quotient `G/H` back to `G` by zero-padding the
/// coordinates of the dropped suffix.
pub(crate) fn lift(g: &Group, q: &GroupElement) -> Result<GroupElement> {
    if q.group() == g {
        return Ok(q.clone());
    }
    let coords = q.lex_coords().ok_or_else(|| Error::DescriptorMismatch(format!("{q} is not in a quotient of {g}")))?;
    let mut full = coords.to_vec();
    full.resize(g.rank(), Default::default());
    g.lex_element(full)
}

fn positive_series(s: &mut Sampler, field: &Field) -> TruncatedSeries {
    let x = s.series(field);
    x.abs().expect("exact sample")
}

fn require_positive(b: &TruncatedSeries) -> Result<()> {
    match b.sign()? {
        Sign::Positive => Ok(()),
        _ => Err(Error::Precondition(format!("b = {b} must be positive"))),
    }
}
