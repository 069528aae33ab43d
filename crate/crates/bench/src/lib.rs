//! Shared inputs for the benchmarks.

use valuadef_core::hahn::parse_series;
use valuadef_core::{Field, TruncatedSeries};

pub fn field(text: &str) -> Field {
    Field::parse(text).expect("benchmark field")
}

pub fn series(field: &Field, text: &str) -> TruncatedSeries {
    parse_series(field, text).expect("benchmark series")
}
