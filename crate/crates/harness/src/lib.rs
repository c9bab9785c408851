//! Randomized exact verification of the identities, with JSON and Markdown
//! reports.

pub mod case;
pub mod config;
pub mod error;
pub mod fixture;
pub mod matrix;
pub mod report;
pub mod runner;
pub mod suites;

pub use config::{Suite, SuiteConfig};
pub use error::HarnessError;
pub use report::{Report, Status};
pub use runner::run_suite;
