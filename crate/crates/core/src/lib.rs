// `!(x > 0.0)` is used on purpose to reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod functionals;
pub mod geometry;
pub mod inequalities;
pub mod measures;
pub mod sample;
pub mod scenarios;

pub use error::{Error, Result};
