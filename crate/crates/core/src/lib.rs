//! Longest non-crossing matchings in random d-partite hyper-graphs.
//!
//! A non-crossing hyper-matching is a set of edges that form a chain under
//! strict coordinatewise dominance; `L(G)` is the size of a largest one.
//! The crate provides the graph type, exact samplers for the binomial,
//! word, symmetric, anti-symmetric and oriented random models, exact
//! solvers, the block decompositions used in tail arguments, and a
//! reproducible Monte Carlo layer for estimating scaling constants.

pub mod blocks;
pub mod error;
pub mod estimators;
pub mod graph;
pub mod io;
pub mod samplers;
pub mod seed;
pub mod solvers;
pub mod suites;

pub use error::{Error, Result, ViolationKind};
pub use graph::{HyperEdge, HyperGraph, MatchingResult};
pub use samplers::{EdgeGuard, ModelKind, ModelSpec};
pub use seed::Seed;
pub use solvers::{brute_force_lnm, longest_noncrossing_matching, PointSet};
