pub mod defcheck;
pub mod error;
pub mod hahn;
pub mod oag;
pub mod ovf;
pub mod ratfunc;
pub mod rational;
pub mod report;
pub mod sample;

pub use error::{Error, Result};
pub use hahn::{Bound, Coefficient, CoefficientField, Field, Sign, TruncatedSeries};
pub use oag::{ConvexSubgroup, Group, GroupDescriptor, GroupElement, Line};
pub use ovf::{GroupClassification, ValuationSpec};
pub use report::{CheckReport, Failure, Verdict};
