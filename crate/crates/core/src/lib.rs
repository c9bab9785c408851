//! Exact symbolic verification of pseudohermitian identities on the
//! five-dimensional Heisenberg model.

pub mod error;
pub mod expr;
pub mod fixture;
pub mod forms;
pub mod geometry;
pub mod mutation;
pub mod pairing;
pub mod qops;
pub mod rumin;

pub use error::{Error, Result};
