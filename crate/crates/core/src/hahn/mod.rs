//! Truncated Hahn series `k((G))` over `Q`, `Q(sqrt(d))`, or the real closed
//! model, with the canonical valuation and the ordering by the sign of the
//! leading coefficient.

mod coeff;
mod field;
mod parse;
mod roots;
mod series;

pub use coeff::Coefficient;
pub use field::{CoefficientField, Field, FieldDescriptor};
pub use parse::{eval_series_expr, parse_series};
pub use roots::{DENSE_STEPS, DISCRETE_STEPS};
pub use series::{Bound, Sign, TruncatedSeries};

#[cfg(test)]
mod tests;
