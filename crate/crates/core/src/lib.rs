//! Graph limits laboratory.
//!
//! Exact finite-graph tools ([`graphs`]), step graphons and their entropy
//! ([`graphons`]), cut norms and cut distances ([`cutmetrics`]), hereditary
//! graph classes ([`classes`]) and scripted experiments ([`experiments`]).
//! The `graphonlab` binary exposes all of it through [`cli`].

pub mod classes;
pub mod cli;
pub mod cutmetrics;
pub mod error;
pub mod experiments;
pub mod graphons;
pub mod graphs;
pub mod rng;

pub use error::{Error, Result};
pub use graphons::StepGraphon;
pub use graphs::Graph;

/// Version stamp written into reports and JSON documents.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
