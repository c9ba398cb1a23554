//! Experiments, file formats and the command-line front end for `qwalk-core`.

#![forbid(unsafe_code)]
// `!(x > 0.0)` is how NaN gets rejected along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod check;
pub mod config;
mod error;
pub mod experiments;
pub mod fft;
pub mod output;

pub use config::{ExperimentConfig, Kind};
pub use error::{AppError, AppResult};
pub use fft::RustFft;
