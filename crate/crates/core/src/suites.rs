//! Named verification suites run by `hypermatch verify`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::blocks::{
    holder_holds, partition_matching, product_lemma_holds, split_into_blocks, verify_partition_bounds, BlockPartition,
    PartitionRegime, PartitionType,
};
use crate::error::{Error, Result};
use crate::estimators::constants::{binomial_concentration, word_concentration};
use crate::estimators::{
    concentration_check, edge_stats_check, equidistribution_check, superadditivity_check, ConcentrationCheckConfig,
};
use crate::graph::{is_chain, HyperEdge, HyperGraph};
use crate::samplers::{EdgeGuard, ModelSpec};
use crate::seed::{Seed, SimRng};
use crate::solvers::{brute_force_lnm, longest_chain_dd, longest_noncrossing_matching};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Oracle,
    Closedform,
    Blocks,
    Concentration,
    Equidistribution,
    Superadditivity,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Oracle,
        Suite::Closedform,
        Suite::Blocks,
        Suite::Concentration,
        Suite::Equidistribution,
        Suite::Superadditivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Closedform => "closedform",
            Suite::Blocks => "blocks",
            Suite::Concentration => "concentration",
            Suite::Equidistribution => "equidistribution",
            Suite::Superadditivity => "superadditivity",
        }
    }

    /// Random instances for `oracle` and `blocks`, replicates otherwise.
    pub fn default_cases(self) -> usize {
        match self {
            Suite::Oracle => 500,
            Suite::Closedform => 20_000,
            Suite::Blocks => 1_000,
            Suite::Concentration => 20_000,
            Suite::Equidistribution => 2_000,
            Suite::Superadditivity => 2_000,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::contract(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: Value) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

pub fn run_suite(suite: Suite, cases: usize, seed: Seed, workers: usize) -> Result<SuiteReport> {
    if cases == 0 {
        return Err(Error::contract("cases must be >= 1"));
    }
    let checks = match suite {
        Suite::Oracle => oracle_suite(cases, seed)?,
        Suite::Closedform => closedform_suite(cases, seed, workers)?,
        Suite::Blocks => blocks_suite(cases, seed)?,
        Suite::Concentration => concentration_suite(cases, seed, workers)?,
        Suite::Equidistribution => equidistribution_suite(cases, seed, workers)?,
        Suite::Superadditivity => superadditivity_suite(cases, seed, workers)?,
    };
    Ok(SuiteReport {
        suite,
        cases,
        seed: seed.0,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

/// Random graph with `d` classes of size `1..=max_dim` and at most
/// `max_edges` distinct edges.
pub fn random_small_graph(rng: &mut SimRng, d: usize, max_dim: u32, max_edges: usize) -> HyperGraph {
    let dims: Vec<u32> = (0..d).map(|_| rng.random_range(1..=max_dim)).collect();
    let m = rng.random_range(0..=max_edges);
    let edges: Vec<Vec<u32>> = (0..m)
        .map(|_| dims.iter().map(|&n| rng.random_range(1..=n)).collect())
        .collect();
    HyperGraph::from_unsorted(dims, &edges).expect("coordinates in range")
}

/// Strictly increasing chain of length `m` in `[1, n]^d`.
pub fn random_chain(rng: &mut SimRng, d: usize, n: u32, m: usize) -> Vec<HyperEdge> {
    let cols: Vec<Vec<u32>> = (0..d)
        .map(|_| {
            let mut c: Vec<u32> = rand::seq::index::sample(rng, n as usize, m)
                .into_iter()
                .map(|v| v as u32 + 1)
                .collect();
            c.sort_unstable();
            c
        })
        .collect();
    (0..m).map(|i| HyperEdge(cols.iter().map(|c| c[i]).collect())).collect()
}

fn oracle_suite(cases: usize, seed: Seed) -> Result<Vec<CheckResult>> {
    let mut rng = seed.rng();
    let mut mismatches = Vec::new();
    let mut bad_witness = 0usize;
    for case in 0..cases {
        let d = rng.random_range(2..=4);
        let h = random_small_graph(&mut rng, d, 5, 12);
        let brute = brute_force_lnm(&h)?;
        let fast = longest_noncrossing_matching(&h, false).length;
        let with = longest_noncrossing_matching(&h, true);
        let generic = longest_chain_dd(h.flat(), d);
        let witness_ok = with.is_consistent()
            && with
                .witness
                .as_ref()
                .is_some_and(|w| is_chain(w) && w.iter().all(|e| h.contains(&e.0)));
        if !witness_ok {
            bad_witness += 1;
        }
        if fast != brute || with.length != brute || generic != brute {
            mismatches.push(json!({"case": case, "dims": h.dims(), "brute": brute, "fast": fast, "generic": generic}));
        }
    }
    Ok(vec![
        CheckResult::new(
            "solvers agree with brute force",
            mismatches.is_empty(),
            json!({"instances": cases, "mismatches": mismatches.iter().take(10).collect::<Vec<_>>()}),
        ),
        CheckResult::new(
            "witnesses are chains of the graph",
            bad_witness == 0,
            json!({"invalid": bad_witness}),
        ),
    ])
}

fn closedform_suite(reps: usize, seed: Seed, workers: usize) -> Result<Vec<CheckResult>> {
    let specs = [
        ModelSpec::binomial(vec![10, 10], 0.1)?,
        ModelSpec::word(vec![20, 20], 4)?,
        ModelSpec::symmetric(10, 0.1)?,
    ];
    specs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let r = edge_stats_check(spec, reps, seed.derive(i as u64), workers)?;
            Ok(CheckResult::new(
                format!("{} edge statistics", spec.kind.name()),
                r.passed,
                serde_json::to_value(&r).expect("serializable"),
            ))
        })
        .collect()
}

/// Chain partitions, type round trips, split additivity, the partition
/// count bounds inside their regime, and the two product inequalities.
fn blocks_suite(cases: usize, seed: Seed) -> Result<Vec<CheckResult>> {
    let mut rng = seed.rng();
    let mut failures: Vec<Value> = Vec::new();
    let mut roundtrip_failures = 0usize;
    for case in 0..cases {
        let d = rng.random_range(2..=4);
        let n = rng.random_range(1..=80);
        let m = rng.random_range(0..=n as usize);
        let chain = random_chain(&mut rng, d, n, m);
        let s_max = rng.random_range(1..=8);
        let span_cap = rng.random_range(0..=20);
        let p = partition_matching(&chain, s_max, span_cap)?;
        if let Err(msg) = p.check_invariants() {
            failures.push(json!({"case": case, "error": msg}));
        }
        let t = p.partition_type();
        let text = serde_json::to_string(&t).expect("serializable");
        let back: PartitionType = serde_json::from_str(&text).expect("own output parses");
        let rebuilt = BlockPartition::from_type(&chain, &back, s_max, span_cap)?;
        if back != t || rebuilt != p {
            roundtrip_failures += 1;
        }
    }

    let mut split_failures = Vec::new();
    let split_instances = 200;
    for case in 0..split_instances {
        let d = rng.random_range(2..=3);
        let n = rng.random_range(4..=24u32);
        let spec = ModelSpec::binomial(vec![n; d], rng.random_range(0.05..0.6))?;
        let h = spec.sample_with(&mut rng, &EdgeGuard::default())?.graph;
        let q = rng.random_range(1..=n as usize);
        let split = split_into_blocks(&h, q)?;
        let whole = longest_noncrossing_matching(&h, false).length;
        let parts: usize = split
            .blocks
            .iter()
            .map(|b| longest_noncrossing_matching(b, false).length)
            .sum();
        if whole < parts {
            split_failures.push(json!({"case": case, "whole": whole, "parts": parts}));
        }
    }

    let regime_cases = cases.min(200);
    let mut regime_failures = Vec::new();
    for case in 0..regime_cases {
        let m_max = rng.random_range(400..=2000);
        let regime = PartitionRegime {
            t: 100.0,
            lambda: 0.5,
            alpha: 0.75,
            eta: 0.0,
            c: 2.0,
            c_g: 2.0,
            n_geo: 2000.0,
            class_sum: 4000.0,
            m_max,
        };
        let chain = random_chain(&mut rng, 2, 2000, m_max);
        let p = partition_matching(&chain, regime.s_max(), regime.span_cap())?;
        let r = verify_partition_bounds(&p, regime.n_geo, regime.l(), Some(&regime));
        if r.ok != Some(true) {
            regime_failures.push(json!({"case": case, "m": m_max, "report": r}));
        }
    }

    let product_inputs = 100_000;
    let mut lemma_failures = Vec::new();
    let mut holder_failures = 0usize;
    for _ in 0..product_inputs {
        let d = rng.random_range(2..=5);
        let x: Vec<f64> = (0..d).map(|_| rng.random_range(1.0..100.0)).collect();
        if !product_lemma_holds(&x)? {
            lemma_failures.push(x);
        }
        let q = rng.random_range(1..=6);
        let rows: Vec<Vec<f64>> = (0..q)
            .map(|_| (0..d).map(|_| rng.random_range(0.01..10.0)).collect())
            .collect();
        if !holder_holds(&rows)? {
            holder_failures += 1;
        }
    }

    Ok(vec![
        CheckResult::new(
            "partition invariants",
            failures.is_empty(),
            json!({"chains": cases, "failures": failures.iter().take(10).collect::<Vec<_>>()}),
        ),
        CheckResult::new(
            "type round trip",
            roundtrip_failures == 0,
            json!({"chains": cases, "failures": roundtrip_failures}),
        ),
        CheckResult::new(
            "split additivity",
            split_failures.is_empty(),
            json!({"instances": split_instances, "failures": split_failures}),
        ),
        CheckResult::new(
            "block count within [N/l, 3N/l]",
            regime_failures.is_empty(),
            json!({"chains": regime_cases, "failures": regime_failures.iter().take(10).collect::<Vec<_>>()}),
        ),
        CheckResult::new(
            "product lemma on x >= 1",
            lemma_failures.is_empty(),
            json!({"inputs": product_inputs, "failures": lemma_failures.iter().take(10).collect::<Vec<_>>()}),
        ),
        CheckResult::new(
            "generalized Hoelder",
            holder_failures == 0,
            json!({"inputs": product_inputs, "failures": holder_failures}),
        ),
    ])
}

fn concentration_suite(reps: usize, seed: Seed, workers: usize) -> Result<Vec<CheckResult>> {
    let s_grid = vec![0.1, 0.2, 0.3];
    let cases = [
        (ModelSpec::binomial(vec![500, 500], 0.04)?, binomial_concentration()),
        (ModelSpec::word(vec![500, 500], 8)?, word_concentration(2)),
    ];
    cases
        .iter()
        .enumerate()
        .map(|(i, (spec, h))| {
            let cfg = ConcentrationCheckConfig {
                h: *h,
                s_grid: s_grid.clone(),
                reps,
                workers,
            };
            let r = concentration_check(spec, &cfg, seed.derive(i as u64))?;
            Ok(CheckResult::new(
                format!("{} tails, h = {h}", spec.kind.name()),
                r.violations().is_empty(),
                serde_json::to_value(&r).expect("serializable"),
            ))
        })
        .collect()
}

fn equidistribution_suite(reps: usize, seed: Seed, workers: usize) -> Result<Vec<CheckResult>> {
    let r = equidistribution_check(200, 0.1, reps, seed, workers, 0.05)?;
    Ok(vec![CheckResult::new(
        "symmetric vs oriented L",
        r.passed,
        serde_json::to_value(&r).expect("serializable"),
    )])
}

fn superadditivity_suite(reps: usize, seed: Seed, workers: usize) -> Result<Vec<CheckResult>> {
    let runs = [
        ("binomial n = 200 + 200, p = 0.1", 0.1),
        ("binomial n = 200 + 200, p = 0", 0.0),
    ];
    runs.iter()
        .enumerate()
        .map(|(i, (name, p))| {
            let r = superadditivity_check(
                |n| ModelSpec::binomial(vec![n, n], *p),
                400,
                (200, 200),
                reps,
                seed.derive(i as u64),
                workers,
            )?;
            Ok(CheckResult::new(
                *name,
                r.passed,
                serde_json::to_value(&r).expect("serializable"),
            ))
        })
        .collect()
}
