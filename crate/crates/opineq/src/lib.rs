//! File formats, reports and the command-line front end for `opineq-core`.
//!
//! Matrices, bounds, maps, instances, single cases, suite configurations and
//! reports are JSON documents (see [`format`] and [`report`]). Suites run in
//! parallel with a report that does not depend on the thread count.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod format;
pub mod report;

pub use cli::run_cli;
pub use error::{AppError, AppResult};
