//! Statistical checks built on the replicate engine.
//!
//! Every "within 4 standard errors" gate below compares a sample mean of
//! independent replicates against a target; by Chebyshev the chance of a
//! false alarm is below 1/16 for any distribution with finite variance, and
//! far smaller under the near-normal sampling distributions seen here.

use serde::{Deserialize, Serialize};

use super::closed_form::closed_form_edge_stats;
use super::engine::{estimate_L_stats, run_replicates, Experiment};
use super::stats::{ks_distance, variance_std_error, SampleStats, DEFAULT_QUANTILES};
use crate::error::{Error, Result};
use crate::samplers::{EdgeGuard, ModelSpec};
use crate::seed::Seed;
use crate::solvers::longest_noncrossing_matching;

/// Standard errors allowed by the statistical gates.
pub const SE_GATE: f64 = 4.0;

/// Largest point count accepted by the quadratic chain DP (`d >= 3`).
pub const DEFAULT_DD_POINT_CAP: usize = 50_000;

fn normalized_stats(values: Vec<f64>) -> SampleStats {
    SampleStats::from_reals(&values, &DEFAULT_QUANTILES)
}

/// `H_d(n) / n^(1/d)` for `n` uniform points in the unit cube.
pub fn estimate_ulam(
    d: usize,
    n: usize,
    reps: usize,
    seed: Seed,
    workers: usize,
    dd_cap: usize,
) -> Result<SampleStats> {
    if d == 0 {
        return Err(Error::contract("dimension must be >= 1"));
    }
    if d >= 3 && n > dd_cap {
        return Err(Error::Resource(format!(
            "{n} points exceed the quadratic DP budget for d = {d}; use n <= {dd_cap}"
        )));
    }
    if n == 0 || reps == 0 {
        return Err(Error::contract("need n >= 1 and reps >= 1"));
    }
    let est = estimate_L_stats(&Experiment::UnitCube { n, d }, reps, seed, workers)?;
    let scale = (n as f64).powf(1.0 / d as f64);
    Ok(normalized_stats(
        est.records.iter().map(|r| r.l as f64 / scale).collect(),
    ))
}

/// `L(I_2m) / sqrt(2m)` for uniform fixed-point-free involutions.
pub fn estimate_involution(m: usize, reps: usize, seed: Seed, workers: usize) -> Result<SampleStats> {
    if m == 0 || reps == 0 {
        return Err(Error::contract("need m >= 1 and reps >= 1"));
    }
    let est = estimate_L_stats(&Experiment::Involution { m }, reps, seed, workers)?;
    let scale = ((2 * m) as f64).sqrt();
    Ok(normalized_stats(
        est.records.iter().map(|r| r.l as f64 / scale).collect(),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperadditivityReport {
    pub whole: SampleStats,
    pub first: SampleStats,
    pub second: SampleStats,
    /// `mean(n) - mean(n') - mean(n'')`.
    pub gap: f64,
    pub pooled_se: f64,
    pub passed: bool,
}

/// Compares `E L(n)` with `E L(n') + E L(n'')` for `n = n' + n''`.
/// `make(n)` builds the model at size `n`.
pub fn superadditivity_check(
    make: impl Fn(u32) -> Result<ModelSpec>,
    n: u32,
    split: (u32, u32),
    reps: usize,
    seed: Seed,
    workers: usize,
) -> Result<SuperadditivityReport> {
    if split.0 + split.1 != n || split.0 == 0 || split.1 == 0 {
        return Err(Error::contract(format!("{} + {} != {n}", split.0, split.1)));
    }
    let run = |size: u32, tag: u64| -> Result<SampleStats> {
        Ok(estimate_L_stats(&Experiment::model(make(size)?), reps, seed.derive(tag), workers)?.stats)
    };
    let whole = run(n, 0)?;
    let first = run(split.0, 1)?;
    let second = run(split.1, 2)?;
    let gap = whole.mean - first.mean - second.mean;
    let pooled_se = (whole.std_error.powi(2) + first.std_error.powi(2) + second.std_error.powi(2)).sqrt();
    Ok(SuperadditivityReport {
        passed: gap >= -SE_GATE * pooled_se,
        whole,
        first,
        second,
        gap,
        pooled_se,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquidistributionReport {
    pub symmetric: SampleStats,
    pub oriented: SampleStats,
    pub mean_diff: f64,
    pub mean_pooled_se: f64,
    pub var_diff: f64,
    pub var_pooled_se: f64,
    pub ks_distance: f64,
    pub ks_limit: f64,
    pub passed: bool,
}

/// `L` of the symmetric and oriented models at the same `(n, p)`.
pub fn equidistribution_check(
    n: u32,
    p: f64,
    reps: usize,
    seed: Seed,
    workers: usize,
    ks_limit: f64,
) -> Result<EquidistributionReport> {
    let draw = |spec: ModelSpec, tag: u64| -> Result<Vec<f64>> {
        let est = estimate_L_stats(&Experiment::model(spec), reps, seed.derive(tag), workers)?;
        Ok(est.records.iter().map(|r| r.l as f64).collect())
    };
    let s = draw(ModelSpec::symmetric(n, p)?, 0)?;
    let o = draw(ModelSpec::oriented(n, p)?, 1)?;
    let ss = normalized_stats(s.clone());
    let os = normalized_stats(o.clone());
    let mean_diff = ss.mean - os.mean;
    let mean_pooled_se = (ss.std_error.powi(2) + os.std_error.powi(2)).sqrt();
    let var_diff = ss.variance - os.variance;
    let var_pooled_se = (variance_std_error(&s).powi(2) + variance_std_error(&o).powi(2)).sqrt();
    let ks = ks_distance(&s, &o);
    Ok(EquidistributionReport {
        passed: mean_diff.abs() <= SE_GATE * mean_pooled_se
            && var_diff.abs() <= SE_GATE * var_pooled_se
            && ks <= ks_limit,
        symmetric: ss,
        oriented: os,
        mean_diff,
        mean_pooled_se,
        var_diff,
        var_pooled_se,
        ks_distance: ks,
        ks_limit,
    })
}

/// One compared quantity: empirical mean against a target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanGate {
    pub name: String,
    pub empirical: f64,
    pub std_error: f64,
    pub target: f64,
    pub passed: bool,
}

impl MeanGate {
    fn equal(name: &str, s: &SampleStats, target: f64) -> Self {
        MeanGate {
            name: name.into(),
            empirical: s.mean,
            std_error: s.std_error,
            target,
            passed: (s.mean - target).abs() <= SE_GATE * s.std_error.max(f64::MIN_POSITIVE),
        }
    }

    fn at_most(name: &str, s: &SampleStats, target: f64) -> Self {
        MeanGate {
            name: name.into(),
            empirical: s.mean,
            std_error: s.std_error,
            target,
            passed: s.mean <= target + SE_GATE * s.std_error,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeStatsReport {
    pub spec: ModelSpec,
    pub reps: usize,
    pub gates: Vec<MeanGate>,
    /// `L(H) >= L(H')` held on every sample.
    pub reduction_monotone: bool,
    pub passed: bool,
}

/// Empirical `|E|`, `|E'|`, `|E \ E'|` and `L(H) - L(H')` against the closed forms.
pub fn edge_stats_check(spec: &ModelSpec, reps: usize, seed: Seed, workers: usize) -> Result<EdgeStatsReport> {
    let cf = closed_form_edge_stats(spec)?;
    let guard = EdgeGuard::default();
    let rows = run_replicates(reps, seed, workers, |_, rng| {
        let h = spec.sample_with(rng, &guard)?.graph;
        let hp = h.reduce_degree_one();
        let l = longest_noncrossing_matching(&h, false).length;
        let lp = longest_noncrossing_matching(&hp, false).length;
        Ok([h.num_edges() as f64, hp.num_edges() as f64, l as f64, lp as f64])
    })?;
    let col = |i: usize| normalized_stats(rows.iter().map(|r| r[i]).collect());
    let (e, ep) = (col(0), col(1));
    let diff = normalized_stats(rows.iter().map(|r| r[0] - r[1]).collect());
    let l_gap = normalized_stats(rows.iter().map(|r| r[2] - r[3]).collect());
    let mut gates = vec![MeanGate::equal("E|E|", &e, cf.expected_e)];
    if let (Some(epc), Some(bound)) = (cf.expected_e_prime, cf.bound_e_minus_e_prime) {
        gates.push(MeanGate::equal("E|E'|", &ep, epc));
        gates.push(MeanGate::at_most("E|E \\ E'|", &diff, bound));
        gates.push(MeanGate::at_most("E[L(H) - L(H')]", &l_gap, bound));
    }
    let reduction_monotone = rows.iter().all(|r| r[2] >= r[3]);
    let passed = reduction_monotone && gates.iter().all(|g| g.passed);
    Ok(EdgeStatsReport {
        spec: spec.clone(),
        reps,
        gates,
        reduction_monotone,
        passed,
    })
}
