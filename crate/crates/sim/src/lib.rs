//! Agent-based simulation of hacker populations on top of the protocol engine.

pub mod agent;
pub mod compare;
pub mod config;
pub mod metrics;
pub mod output;
pub mod world;

pub use compare::{compare, variant_arms, Arm, Comparison};
pub use config::{load_config, ConfigError, SimulationConfig};
pub use metrics::{compute_metrics, metrics_from_log, MetricsContext, MetricsSummary, RunMetrics};
pub use world::{run_simulation, RunResult, SimError, World};
