//! Closed-form edge statistics, the Monte Carlo engine, and the
//! experiments built on it.

mod checks;
mod closed_form;
mod concentration;
pub mod constants;
mod engine;
mod stats;
mod sweep;

pub use checks::{
    edge_stats_check, equidistribution_check, estimate_involution, estimate_ulam, superadditivity_check,
    EdgeStatsReport, EquidistributionReport, MeanGate, SuperadditivityReport, DEFAULT_DD_POINT_CAP, SE_GATE,
};
pub use closed_form::{closed_form_edge_stats, EdgeStatsClosedForm};
pub use concentration::{
    concentration_check, tail_report, ConcentrationCheckConfig, ConcentrationReport, TailRow, TAIL_CONFIDENCE,
};
pub use engine::{estimate_L_stats, run_replicates, Experiment, LEstimate, Observation, ReplicateRecord};
pub use stats::{clopper_pearson_upper, ks_distance, variance_std_error, SampleStats, DEFAULT_QUANTILES, Z95};
pub use sweep::{sweep_constant, ConvergenceReport, DimsRule, ModelFamily, SweepConfig, SweepRow, DEFAULT_SIZE_FACTOR};
