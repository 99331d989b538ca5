//! Experiment orchestration over the core library: Pareto sweeps over the
//! population-sampling probability, sequential replay of ordering strategies,
//! 1-D SGD scenarios with analytic overlays, and Monte-Carlo dichotomy
//! checks — plus stable JSON/CSV emission for all of them.

pub mod emit;
pub mod harness;

pub use harness::{
    bounds_mc, oned, replay, source::DataSource, sweep, BoundsMcConfig, BoundsMcResult,
    FrontierPoint, OnedConfig, OnedResult, ReplayConfig, ReplayResult, SweepConfig, SweepResult,
};
