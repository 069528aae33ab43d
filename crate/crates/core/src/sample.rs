//! Seeded random elements for the sampling checks.
//!
//! Support size at most 5, exponent coordinates in `[-6, 6]` (denominators up
//! to 6 on `Q` lines), coefficients with numerator and denominator up to 20.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hahn::{Bound, Coefficient, CoefficientField, Field, TruncatedSeries};
use crate::oag::{Group, GroupDescriptor, GroupElement, Line};
use crate::rational::{rat, Rational};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone)]
pub struct SampleConfig {
    pub max_support: usize,
    pub coord_bound: i64,
    pub max_den: i64,
    pub coeff_bound: i64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { max_support: 5, coord_bound: 6, max_den: 6, coeff_bound: 20 }
    }
}

pub struct Sampler {
    pub config: SampleConfig,
    pub rng: SampleRng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { config: SampleConfig::default(), rng: rng(seed) }
    }

    pub fn rational(&mut self, bound: i64) -> Rational {
        let n = self.rng.gen_range(-bound..=bound);
        let d = self.rng.gen_range(1..=bound);
        rat(n, d)
    }

    pub fn nonzero_rational(&mut self, bound: i64) -> Rational {
        loop {
            let q = self.rational(bound);
            if q != Rational::from_integer(0.into()) {
                return q;
            }
        }
    }

    pub fn exponent(&mut self, group: &Group) -> GroupElement {
        let b = self.config.coord_bound;
        match group.descriptor() {
            GroupDescriptor::LexProduct(lines) => {
                let coords = lines
                    .iter()
                    .map(|l| match l {
                        Line::Integer => Rational::from_integer(self.rng.gen_range(-b..=b).into()),
                        Line::Rational => {
                            let den = self.rng.gen_range(1..=self.config.max_den);
                            rat(self.rng.gen_range(-b * den..=b * den), den)
                        }
                    })
                    .collect();
                group.lex_element(coords).expect("sampled coordinates are valid")
            }
            GroupDescriptor::RealEmbedded { .. } => {
                let a = BigInt::from(self.rng.gen_range(-b..=b));
                let c = BigInt::from(self.rng.gen_range(-b..=b));
                group.real_element(a, c).expect("real group")
            }
        }
    }

    pub fn coefficient(&mut self, k: CoefficientField) -> Coefficient {
        let cb = self.config.coeff_bound;
        match k {
            CoefficientField::QuadraticExtension(d) if self.rng.gen_bool(0.5) => loop {
                let c = Coefficient::quadratic(self.rational(cb), self.rational(cb), d);
                if !c.is_zero() {
                    return c;
                }
            },
            _ => Coefficient::Rational(self.nonzero_rational(cb)),
        }
    }

    /// An exact series with between one and `max_support` terms.
    pub fn series(&mut self, field: &Field) -> TruncatedSeries {
        let n = self.rng.gen_range(1..=self.config.max_support);
        self.series_with_support(field, n)
    }

    pub fn series_with_support(&mut self, field: &Field, n: usize) -> TruncatedSeries {
        let terms: Vec<_> =
            (0..n).map(|_| (self.exponent(field.group()), self.coefficient(field.coefficients()))).collect();
        let s = TruncatedSeries::from_terms(field, terms, Bound::Infinite).expect("valid terms");
        if s.has_terms() {
            s
        } else {
            TruncatedSeries::one(field)
        }
    }

    /// A sampled series with valuation at least zero in the canonical valuation.
    pub fn integral_series(&mut self, field: &Field) -> TruncatedSeries {
        let s = self.series(field);
        let v = s.valuation().expect("nonzero");
        if v.is_negative() {
            s.mul_monomial(&Coefficient::one(), &-&v)
        } else {
            s
        }
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.gen_range(0..items.len())]
    }
}
