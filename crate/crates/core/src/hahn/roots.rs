//! Inversion by geometric series and `n`-th roots by Newton iteration.
//!
//! Both work on the normalised form `x = c * t^g * (1 + u)` with `v(u) > 0`.
//! Targets are absolute precisions for the result; when a target is not
//! reachable in finitely many steps (over non-archimedean groups) the result
//! carries the precision actually certified.

use num_bigint::BigInt;

use super::coeff::Coefficient;
use super::series::{Bound, TruncatedSeries};
use crate::error::{Error, Result};
use crate::oag::GroupElement;

/// Iteration cap for the geometric series.
const MAX_TERMS: usize = 512;
const MAX_NEWTON: usize = 64;
/// Default relative precision in unit steps over discrete groups.
pub const DISCRETE_STEPS: i64 = 16;
/// Default relative precision in multiples of the leading gap over dense groups.
pub const DENSE_STEPS: i64 = 8;

impl TruncatedSeries {
    /// Splits `x = c t^g (1 + u)`, returning `(g, c, u)`; `u` carries the
    /// relative precision `p_x - g`.
    fn normalise(&self) -> Result<(GroupElement, Coefficient, TruncatedSeries)> {
        let (g, c) = match self.leading() {
            Some(lead) => lead.clone(),
            None if self.is_exact_zero() => return Err(Error::DivisionByZero),
            None => return Err(Error::precision("no known terms; cannot normalise")),
        };
        let cinv = c.inv()?;
        let u = self.mul_monomial(&cinv, &-&g).sub(&TruncatedSeries::one(self.field()))?;
        Ok((g, c, u))
    }

    /// Relative precision used when the caller gives no target.
    ///
    /// Discrete groups: `16` times the least positive element. Dense groups:
    /// `8` times the gap between the two leading exponents (the first term of
    /// `u`), so that about eight correction terms are produced. With one known
    /// term the result is as exact as the input.
    pub fn default_relative_precision(&self) -> Bound {
        let group = self.field().group();
        if let Some(e) = group.least_positive() {
            return Bound::Finite(e.scale_i(DISCRETE_STEPS));
        }
        match self.leading_gap() {
            Some(gap) => Bound::Finite(gap.scale_i(DENSE_STEPS)),
            None => Bound::Infinite,
        }
    }

    /// Default absolute target for `inverse`: `-v(x)` plus the default relative precision.
    pub fn default_inverse_target(&self) -> Result<Bound> {
        let v = self.valuation()?;
        Ok(self.default_relative_precision().shift(&-&v))
    }

    pub fn inverse(&self, target: Option<&Bound>) -> Result<TruncatedSeries> {
        let (g, c, u) = self.normalise()?;
        let rel_target = match target {
            Some(t) => t.shift(&g),
            None => self.default_relative_precision(),
        };
        let cinv = c.inv()?;
        let neg_g = -&g;
        if u.is_exact_zero() {
            let one = TruncatedSeries::one(self.field());
            return Ok(one.mul_monomial(&cinv, &neg_g));
        }
        let w = geometric(&u, &rel_target)?;
        Ok(w.mul_monomial(&cinv, &neg_g))
    }

    /// Default absolute target for `nth_root`: `v(x)/n` plus the default relative precision.
    pub fn default_root_target(&self, n: u32) -> Result<Bound> {
        let v = self.valuation()?;
        let g = v.divide_exact(n).ok_or(Error::ExponentNotDivisible(n))?;
        Ok(self.default_relative_precision().shift(&g))
    }

    /// `y` with `y^n = x` below the target and `y > 0` for even `n`.
    pub fn nth_root(&self, n: u32, target: Option<&Bound>) -> Result<TruncatedSeries> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("root order {n} < 2")));
        }
        let v = self.valuation()?;
        let g_root = v.divide_exact(n).ok_or(Error::ExponentNotDivisible(n))?;
        let (_, c, u) = self.normalise()?;
        let r = self.field().coefficients().nth_root(&c, n)?;
        let rel_target = match target {
            Some(t) => t.shift(&-&g_root),
            None => self.default_relative_precision(),
        };
        let w = if u.is_exact_zero() { TruncatedSeries::one(self.field()) } else { newton_root(&u, n, &rel_target)? };
        Ok(w.mul_monomial(&r, &g_root))
    }
}

/// `1/(1+u)` below `min(target, p_u)`.
fn geometric(u: &TruncatedSeries, target: &Bound) -> Result<TruncatedSeries> {
    let field = u.field();
    let bound = target.clone().min(u.precision().clone());
    let neg_u = u.neg().as_exact();
    let mut sum = TruncatedSeries::one(field).truncate(&bound);
    let mut power = sum.clone();
    for k in 1..=MAX_TERMS {
        power = power.mul_below(&neg_u, &bound)?;
        if !power.has_terms() {
            return Ok(sum.truncate(&bound));
        }
        sum = sum.add(&power)?;
        if k == MAX_TERMS {
            // the tail sum_{j>k} (-u)^j has valuation at least (k+1) v(u)
            let vu = u.valuation()?;
            let reached = Bound::Finite(vu.scale(&BigInt::from(k + 1)));
            return Ok(sum.truncate(&bound.min(reached)));
        }
    }
    unreachable!()
}

/// `w` with `w^n = 1 + u`, `w = 1 + O(u)`, by Newton's method on `Y^n - (1+u)`.
fn newton_root(u: &TruncatedSeries, n: u32, target: &Bound) -> Result<TruncatedSeries> {
    let field = u.field();
    let bound = target.clone().min(u.precision().clone());
    let a = u.add(&TruncatedSeries::one(field))?.truncate(&bound);
    let nn = Coefficient::from(crate::rational::int(n as i64));
    let mut w = TruncatedSeries::one(field);
    for _ in 0..MAX_NEWTON {
        let res = w.pow_below(n, &bound)?.sub(&a)?.truncate(&bound);
        if !res.has_terms() {
            return Ok(w.truncate(&bound));
        }
        let deriv = w.pow_below(n - 1, &bound)?.scale(&nn);
        let step = res.mul_below(&deriv.inverse(Some(&bound))?, &bound)?;
        w = w.sub(&step)?.as_exact().truncate(&bound).as_exact();
    }
    // not converged: w is correct below the valuation of the residual
    let res = w.pow_below(n, &bound)?.sub(&a)?.truncate(&bound);
    let reached = res.valuation_lower_bound();
    Ok(w.truncate(&bound.min(reached)))
}
