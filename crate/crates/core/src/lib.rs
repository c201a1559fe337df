//! Mask-type heterogeneous SIR percolation on two-layer contact networks.

pub mod analytic;
pub mod config;
pub mod harness;
mod error;
pub mod linalg;
pub mod model;
pub mod network;
pub mod sim;

pub use error::{Error, Result, ValidationIssue, ValidationReport};
