//! Empirical tail frequencies against the two-sided concentration bounds
//!
//! ```text
//! P[L <= (1-s) Med] <= 2 exp(-h s^2 Med)
//! P[L >= (1+s) Med] <= 2 exp(-h s^2/(1+s) Med)
//! ```

use serde::{Deserialize, Serialize};

use super::engine::{estimate_L_stats, Experiment};
use super::stats::clopper_pearson_upper;
use crate::error::{Error, Result};
use crate::samplers::ModelSpec;
use crate::seed::Seed;

/// Confidence of the exact binomial upper limits.
pub const TAIL_CONFIDENCE: f64 = 0.99;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationCheckConfig {
    pub h: f64,
    pub s_grid: Vec<f64>,
    pub reps: usize,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailRow {
    pub s: f64,
    pub lower_count: u64,
    pub lower_freq: f64,
    pub lower_ucl: f64,
    pub lower_bound: f64,
    pub upper_count: u64,
    pub upper_freq: f64,
    pub upper_ucl: f64,
    pub upper_bound: f64,
    pub violation: bool,
    /// Both interval widths are below half their bound.
    pub resolved: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub reps: usize,
    pub median: f64,
    pub rows: Vec<TailRow>,
}

impl ConcentrationReport {
    pub fn violations(&self) -> Vec<f64> {
        self.rows.iter().filter(|r| r.violation).map(|r| r.s).collect()
    }
}

/// Tail bound check from the lower sample median. Report-only: a
/// violation is recorded, never raised.
pub fn concentration_check(
    spec: &ModelSpec,
    cfg: &ConcentrationCheckConfig,
    seed: Seed,
) -> Result<ConcentrationReport> {
    if cfg.h <= 0.0 {
        return Err(Error::contract("concentration constant must be positive"));
    }
    let est = estimate_L_stats(&Experiment::model(spec.clone()), cfg.reps, seed, cfg.workers)?;
    let ls: Vec<f64> = est.records.iter().map(|r| r.l as f64).collect();
    Ok(tail_report(&ls, cfg.h, &cfg.s_grid))
}

/// The same check on an already collected sample.
pub fn tail_report(ls: &[f64], h: f64, s_grid: &[f64]) -> ConcentrationReport {
    let reps = ls.len();
    let mut sorted = ls.to_vec();
    sorted.sort_by(f64::total_cmp);
    let med = sorted[reps.div_ceil(2) - 1];
    let n = reps as u64;
    let rows = s_grid
        .iter()
        .map(|&s| {
            let lower_count = ls.iter().filter(|&&l| l <= (1.0 - s) * med).count() as u64;
            let upper_count = ls.iter().filter(|&&l| l >= (1.0 + s) * med).count() as u64;
            let lower_bound = 2.0 * (-h * s * s * med).exp();
            let upper_bound = 2.0 * (-h * s * s / (1.0 + s) * med).exp();
            let lower_ucl = clopper_pearson_upper(lower_count, n, TAIL_CONFIDENCE);
            let upper_ucl = clopper_pearson_upper(upper_count, n, TAIL_CONFIDENCE);
            let lower_freq = lower_count as f64 / reps as f64;
            let upper_freq = upper_count as f64 / reps as f64;
            TailRow {
                s,
                lower_count,
                lower_freq,
                lower_ucl,
                lower_bound,
                upper_count,
                upper_freq,
                upper_ucl,
                upper_bound,
                violation: lower_ucl > lower_bound || upper_ucl > upper_bound,
                resolved: lower_ucl - lower_freq < lower_bound / 2.0 && upper_ucl - upper_freq < upper_bound / 2.0,
            }
        })
        .collect();
    ConcentrationReport {
        reps,
        median: med,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_zero_never_violates() {
        let ls: Vec<f64> = (0..200).map(|i| (i % 7) as f64).collect();
        let r = tail_report(&ls, 0.25, &[0.0]);
        assert_eq!(r.rows[0].lower_bound, 2.0);
        assert!(!r.rows[0].violation);
    }

    #[test]
    fn heavy_tail_is_flagged() {
        // median 10 with 40% of the mass at 1
        let mut ls = vec![1.0; 400];
        ls.extend(vec![10.0; 600]);
        let r = tail_report(&ls, 1.0, &[0.5]);
        assert_eq!(r.median, 10.0);
        assert_eq!(r.rows[0].lower_count, 400);
        // bound 2 exp(-2.5) = 0.164 < 0.4
        assert!(r.rows[0].violation);
        assert_eq!(r.violations(), vec![0.5]);
    }
}
