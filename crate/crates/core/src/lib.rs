//! chainlint-core: static analysis for consensus determinism in Cosmos-SDK-style
//! application chains.
//!
//! The pipeline has four stages:
//!
//! 1. [`source`] parses a Go source tree into an immutable, position-annotated
//!    syntax model with lightweight intra-tree type binding.
//! 2. [`callgraph`] builds a static call graph over the function declarations
//!    and answers reachability / witness-path queries.
//! 3. [`scope`] computes the set of consensus-critical functions, either by
//!    call-graph reachability from ABCI entry points (whitelist mode) or by
//!    package-name matching (legacy blacklist mode).
//! 4. [`rules`] runs the eight determinism detectors against the scope and
//!    [`report`] turns raw findings into fingerprinted, suppressible output
//!    (text, SARIF, baseline diffs).
//!
//! [`metrics`] is an offline evaluation harness that reproduces the
//! precision / noise-ratio arithmetic used to compare analyzer configurations.

pub mod callgraph;
pub mod config;
pub mod driver;
pub mod metrics;
pub mod report;
pub mod rules;
pub mod scope;
pub mod source;

mod error;

pub use error::Error;

/// Crate result alias.
pub type Result<T> = std::result::Result<T, Error>;
