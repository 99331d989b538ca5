//! The experiment harness proper.

pub mod analytic;
pub mod bounds_mc;
pub mod oned;
pub mod replay;
pub mod source;
pub mod sweep;

pub use analytic::{analytic_report, AnalyticConfig, AnalyticReport};
pub use bounds_mc::{check_bounds, BoundsMcConfig, BoundsMcResult};
pub use oned::{run_oned_scenario, OnedConfig, OnedResult};
pub use replay::{run_replay, ReplayConfig, ReplayResult};
pub use sweep::{pareto_filter, sweep_pareto, FrontierPoint, SweepConfig, SweepResult};
