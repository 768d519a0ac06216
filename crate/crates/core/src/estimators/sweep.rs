//! Normalized-constant sweeps over the internal parameter.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::constants::{binomial_scaling, square_scaling, word_scaling};
use super::engine::{estimate_L_stats, Experiment};
use crate::error::{Error, Result};
use crate::samplers::{EdgeGuard, ModelKind, ModelSpec};
use crate::seed::Seed;

/// Default `A` in the size condition `N >= A t^lambda`.
pub const DEFAULT_SIZE_FACTOR: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFamily {
    pub kind: ModelKind,
    /// Number of classes (binomial/word); 2 for the square models.
    pub d: usize,
}

impl ModelFamily {
    pub fn lambda(&self) -> f64 {
        match self.kind {
            ModelKind::Binomial => binomial_scaling(self.d).lambda,
            ModelKind::Word => word_scaling(self.d).lambda,
            _ => square_scaling().lambda,
        }
    }

    /// Model at size `n` (half-size for the anti-symmetric model) and grid
    /// value `param` (`p`, or `k` for words).
    pub fn spec(&self, n: u32, param: f64) -> Result<ModelSpec> {
        match self.kind {
            ModelKind::Binomial => ModelSpec::binomial(vec![n; self.d], param),
            ModelKind::Word => {
                if param < 1.0 || param.fract() != 0.0 {
                    return Err(Error::contract(format!(
                        "alphabet size {param} is not a positive integer"
                    )));
                }
                ModelSpec::word(vec![n; self.d], param as u32)
            }
            kind => ModelSpec::build(kind, vec![n], Some(param), None),
        }
    }

    pub fn internal_parameter(&self, param: f64) -> f64 {
        match self.kind {
            ModelKind::Word => param,
            _ => 1.0 / param,
        }
    }
}

/// How the size `n` is chosen at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimsRule {
    Fixed(u32),
    /// `n = round(scale * t^lambda)`.
    Scaled(f64),
}

impl DimsRule {
    pub fn size(&self, t: f64, lambda: f64) -> u32 {
        match *self {
            DimsRule::Fixed(n) => n,
            DimsRule::Scaled(s) => (s * t.powf(lambda)).round().max(1.0) as u32,
        }
    }
}

impl FromStr for DimsRule {
    type Err = Error;

    /// Accepts `N`, `C/sqrt(p)`, `C*sqrt(k)`, `C*t^lambda`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace(' ', "");
        let bad = || Error::contract(format!("cannot parse dims rule '{s}'"));
        if let Ok(n) = s.parse::<u32>() {
            return Ok(DimsRule::Fixed(n));
        }
        for suffix in ["/sqrt(p)", "*sqrt(k)", "*t^lambda", "*t^λ"] {
            if let Some(c) = s.strip_suffix(suffix) {
                return c.parse::<f64>().map(DimsRule::Scaled).map_err(|_| bad());
            }
        }
        Err(bad())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Grid value as given (`p` or `k`).
    pub param: f64,
    /// Internal parameter `t`.
    pub t: f64,
    /// Model size argument.
    pub n: u32,
    /// Class sizes of the sampled graphs.
    pub dims: Vec<u32>,
    pub reps: usize,
    pub seed: u64,
    pub mean_l: Option<f64>,
    /// `mean L * t^lambda / N`.
    pub normalized: Option<f64>,
    pub ci_half: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub family: ModelFamily,
    pub lambda: f64,
    pub size_factor: f64,
    pub rows: Vec<SweepRow>,
}

impl ConvergenceReport {
    pub const CSV_HEADER: &'static str = "t_or_k,dims,reps,normalized,ci_half";

    /// Rows as CSV with the fixed column order; skipped rows leave the
    /// statistic columns empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        let opt = |x: Option<f64>| x.map(|v| format!("{v}")).unwrap_or_default();
        for r in &self.rows {
            let dims: Vec<String> = r.dims.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.t,
                dims.join("x"),
                r.reps,
                opt(r.normalized),
                opt(r.ci_half)
            );
        }
        out
    }

    pub fn normalized(&self) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r.normalized).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub family: ModelFamily,
    pub grid: Vec<f64>,
    pub rule: DimsRule,
    pub reps: usize,
    pub seed: Seed,
    pub workers: usize,
    pub size_factor: f64,
    pub guard: EdgeGuard,
}

/// One row per grid point; grid point `i` uses master seed `seed.derive(i)`.
pub fn sweep_constant(cfg: &SweepConfig) -> Result<ConvergenceReport> {
    let lambda = cfg.family.lambda();
    let mut rows = Vec::with_capacity(cfg.grid.len());
    for (i, &param) in cfg.grid.iter().enumerate() {
        let t = cfg.family.internal_parameter(param);
        let n = cfg.rule.size(t, lambda);
        let spec = cfg.family.spec(n, param)?;
        let dims = spec.class_dims();
        let n_geo = crate::graph::geometric_mean(&dims);
        let seed = cfg.seed.derive(i as u64);
        let mut row = SweepRow {
            param,
            t,
            n,
            dims,
            reps: cfg.reps,
            seed: seed.0,
            mean_l: None,
            normalized: None,
            ci_half: None,
            warning: None,
        };
        let required = cfg.size_factor * t.powf(lambda);
        if n_geo < required {
            row.warning = Some(format!(
                "skipped: N = {n_geo:.1} below size bound A t^lambda = {required:.1}"
            ));
            rows.push(row);
            continue;
        }
        let experiment = Experiment::Model { spec, guard: cfg.guard };
        let est = estimate_L_stats(&experiment, cfg.reps, seed, cfg.workers)?;
        let scale = t.powf(lambda) / n_geo;
        row.mean_l = Some(est.stats.mean);
        row.normalized = Some(est.stats.mean * scale);
        row.ci_half = Some(est.stats.ci_half_width() * scale);
        rows.push(row);
    }
    Ok(ConvergenceReport {
        family: cfg.family,
        lambda,
        size_factor: cfg.size_factor,
        rows,
    })
}
