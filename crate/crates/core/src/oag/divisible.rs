//! The convex subgroup `Delta_gamma` defined by `[0, p|x|] ⊆ [0, p*gamma] + pG`.
//!
//! Membership `delta - eta ∈ pG` only depends on the residues of the integer
//! coordinates mod `p`, so the formula compares the residue classes realised
//! by the two intervals. Over a lex product the classes realised by `[0, c]`
//! always form a product set: zero before the leading index of `c`, the
//! residues of `0..=c_i` at the leading index, and everything afterwards
//! (a boundary value at the leading index leaves the tail half-unbounded).

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{ConvexSubgroup, Group, GroupDescriptor, GroupElement, Line};
use crate::error::{Error, Result};

/// Residue classes realised at one coordinate; `true` at index `r` means class `r`.
type ClassSet = Vec<bool>;

impl Group {
    /// Classes of `G/pG`, coordinate by coordinate, realised by elements of `[0, c]`.
    fn interval_classes(&self, c: &GroupElement, p: u32) -> Vec<ClassSet> {
        let pu = p as usize;
        let width = |line: Line| if line == Line::Integer { pu } else { 1 };
        let only_zero = |w: usize| {
            let mut v = vec![false; w];
            v[0] = true;
            v
        };
        match self.descriptor() {
            GroupDescriptor::RealEmbedded { .. } => {
                // every coset of pG is dense, so any nondegenerate interval meets all of them
                if c.is_zero() {
                    vec![only_zero(pu), only_zero(pu)]
                } else {
                    vec![vec![true; pu], vec![true; pu]]
                }
            }
            GroupDescriptor::LexProduct(lines) => {
                let coords = c.lex_coords().unwrap();
                let lead = c.leading_index();
                lines
                    .iter()
                    .enumerate()
                    .map(|(i, &line)| match lead {
                        None => only_zero(width(line)),
                        Some(l) if i < l => only_zero(width(line)),
                        Some(l) if i > l => vec![true; width(line)],
                        Some(_) => match line {
                            Line::Rational => vec![true],
                            Line::Integer => {
                                let top = coords[i].to_integer();
                                let mut v = vec![false; pu];
                                let reach = top.to_usize().unwrap_or(usize::MAX).min(pu - 1);
                                for slot in v.iter_mut().take(reach + 1) {
                                    *slot = true;
                                }
                                v
                            }
                        },
                    })
                    .collect()
            }
        }
    }

    /// Decides `[0, p|x|] ⊆ [0, p*gamma] + pG`.
    pub fn formula_member_delta(&self, x: &GroupElement, gamma: &GroupElement, p: u32) -> Result<bool> {
        super::check_prime(p)?;
        self.ensure_same(&x.group)?;
        self.ensure_same(&gamma.group)?;
        if !gamma.is_positive() {
            return Err(Error::InvalidArgument("gamma must be positive".into()));
        }
        let pb = BigInt::from(p);
        let lhs = self.interval_classes(&x.abs().scale(&pb), p);
        let rhs = self.interval_classes(&gamma.scale(&pb), p);
        Ok(lhs.iter().zip(&rhs).all(|(a, b)| a.iter().zip(b).all(|(&ia, &ib)| !ia || ib)))
    }

    /// Maximal convex subgroup containing `gamma` whose quotient by the convex
    /// hull of `gamma` is `p`-divisible.
    pub fn delta_gamma(&self, gamma: &GroupElement, p: u32) -> Result<ConvexSubgroup> {
        super::check_prime(p)?;
        self.ensure_same(&gamma.group)?;
        if !gamma.is_positive() {
            return Err(Error::InvalidArgument("gamma must be positive".into()));
        }
        match self.descriptor() {
            GroupDescriptor::RealEmbedded { .. } => Ok(self.full_subgroup()),
            GroupDescriptor::LexProduct(lines) => {
                let k = gamma.leading_index().expect("positive");
                let rationals_before = lines[..k].iter().rev().take_while(|&&l| l == Line::Rational).count();
                self.subgroup(k - rationals_before)
            }
        }
    }
}
