// Index loops read more clearly for small dense matrices, and `!(x > 0.0)` is
// used on purpose so NaN is rejected.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod closed_forms;
pub mod error;
pub mod info_measures;
pub mod qcd_production;
pub mod scan;
pub mod spin_algebra;

pub use error::{Error, Result};
