//! Suite runner and report emitter for `gaussbm`.

pub mod config;
pub mod plot;
pub mod report;
pub mod single;
pub mod suite;

pub use config::{Overrides, SuiteConfig};
pub use report::{CheckRecord, ReportDocument, Verdict};
pub use suite::{evaluate, run_suite};
