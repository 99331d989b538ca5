//! Adaptive sampling for balanced classifier performance across demographic groups.
//!
//! The crate provides the pieces needed to study and run the strategy end to end:
//!
//! - [`data`]: labeled points with group ids, CSV ingestion, deterministic splits,
//!   and synthetic generators (uniform/Gaussian mixtures, multi-ward data).
//! - [`loss`] / [`model`]: hinge and logistic margin losses, 1-D threshold ERM,
//!   batch logistic regression, and single-point SGD updates.
//! - [`analytic`]: exact closed forms for the 1-D two-group theory (bias curve,
//!   fair threshold, piecewise population hinge risk, the minimizer map over
//!   mixture weights) plus the sample-fraction recurrence and its limit.
//! - [`metrics`]: group performance functionals and disparity aggregations.
//! - [`sampler`]: the round-based adaptive sampling loop over a data pool.
//! - [`bounds`]: finite-sample deviation widths and a dichotomy checker backed
//!   by an exact true-loss oracle.

pub mod analytic;
pub mod bounds;
pub mod data;
pub mod error;
pub mod loss;
pub mod metrics;
pub mod model;
pub mod rng;
pub mod sampler;

pub use error::{Error, Result};
