//! Replicate-parallel Monte Carlo with order-preserving reduction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::{SampleStats, DEFAULT_QUANTILES};
use crate::error::{Error, Result};
use crate::samplers::{sample_involution, sample_permutation_array, sample_unit_cube, EdgeGuard, ModelSpec};
use crate::seed::{Seed, SimRng};
use crate::solvers::{lis_permutation, longest_chain_points, longest_noncrossing_matching};

/// Runs `f(rep, rng)` for `rep in 0..reps`, replicate `rep` drawing from
/// the stream seeded with `seed.child(rep)`. Results come back in replicate
/// order whatever the worker count; the first failing replicate (by index)
/// aborts the run.
pub fn run_replicates<T, F>(reps: usize, seed: Seed, workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, &mut SimRng) -> Result<T> + Sync,
{
    let one = |r: usize| {
        let r = r as u64;
        let mut rng = Seed(seed.child(r)).rng();
        f(r, &mut rng).map_err(|e| Error::Replicate {
            rep: r,
            source: Box::new(e),
        })
    };
    if workers <= 1 {
        return (0..reps).map(one).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    let results: Vec<Result<T>> = pool.install(|| (0..reps).into_par_iter().map(one).collect());
    results.into_iter().collect()
}

/// What a replicate samples and measures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "snake_case")]
pub enum Experiment {
    /// One of the random (hyper)graph models.
    Model {
        spec: ModelSpec,
        #[serde(default)]
        guard: EdgeGuard,
    },
    /// Identity row plus `d - 1` uniform permutations of `[n]`.
    PermutationArray { n: usize, d: usize },
    /// `n` uniform points in `[0,1]^d`.
    UnitCube { n: usize, d: usize },
    /// Uniform fixed-point-free involution of `[2m]`.
    Involution { m: usize },
}

impl Experiment {
    pub fn model(spec: ModelSpec) -> Self {
        Experiment::Model {
            spec,
            guard: EdgeGuard::default(),
        }
    }

    pub fn observe(&self, rng: &mut SimRng) -> Result<Observation> {
        Ok(match self {
            Experiment::Model { spec, guard } => {
                let g = spec.sample_with(rng, guard)?.graph;
                Observation {
                    l: longest_noncrossing_matching(&g, false).length,
                    edges: g.num_edges(),
                }
            }
            Experiment::PermutationArray { n, d } => {
                let g = sample_permutation_array(*n, *d, rng)?;
                Observation {
                    l: longest_noncrossing_matching(&g, false).length,
                    edges: g.num_edges(),
                }
            }
            Experiment::UnitCube { n, d } => {
                let ps = sample_unit_cube(*n, *d, rng)?;
                Observation {
                    l: longest_chain_points(&ps),
                    edges: ps.len(),
                }
            }
            Experiment::Involution { m } => {
                let pi = sample_involution(*m, rng)?;
                Observation {
                    l: lis_permutation(&pi)?,
                    edges: pi.len(),
                }
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub l: usize,
    /// Edge count (points or permutation length for non-graph experiments).
    pub edges: usize,
}

/// Per-replicate output line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplicateRecord {
    pub rep: u64,
    pub seed: u64,
    #[serde(rename = "L")]
    pub l: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LEstimate {
    pub stats: SampleStats,
    pub records: Vec<ReplicateRecord>,
}

/// Samples `reps` instances, solves each exactly, and summarizes `L`.
#[allow(non_snake_case)]
pub fn estimate_L_stats(experiment: &Experiment, reps: usize, seed: Seed, workers: usize) -> Result<LEstimate> {
    if reps == 0 {
        return Err(Error::contract("reps must be >= 1"));
    }
    let obs = run_replicates(reps, seed, workers, |_, rng| experiment.observe(rng))?;
    let ls: Vec<usize> = obs.iter().map(|o| o.l).collect();
    let records = obs
        .iter()
        .enumerate()
        .map(|(r, o)| ReplicateRecord {
            rep: r as u64,
            seed: seed.child(r as u64),
            l: o.l,
            edges: o.edges,
        })
        .collect();
    Ok(LEstimate {
        stats: SampleStats::from_counts(&ls, &DEFAULT_QUANTILES),
        records,
    })
}
