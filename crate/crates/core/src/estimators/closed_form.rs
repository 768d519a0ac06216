//! Exact expectations of `|E|` and `|E'|`, where `E'` is the edge set left
//! by [`crate::HyperGraph::reduce_degree_one`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::samplers::{ModelKind, ModelSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeStatsClosedForm {
    pub expected_e: f64,
    /// `None` where no closed form is available.
    pub expected_e_prime: Option<f64>,
    /// Upper bound on `E|E \ E'|`; the exact difference for the binomial model.
    pub bound_e_minus_e_prime: Option<f64>,
}

impl EdgeStatsClosedForm {
    pub fn e_prime(&self) -> Result<f64> {
        self.expected_e_prime
            .ok_or_else(|| Error::Unsupported("no closed form for E|E'| in this model".into()))
    }

    pub fn bound(&self) -> Result<f64> {
        self.bound_e_minus_e_prime
            .ok_or_else(|| Error::Unsupported("no closed form for E|E \\ E'| in this model".into()))
    }
}

pub fn closed_form_edge_stats(spec: &ModelSpec) -> Result<EdgeStatsClosedForm> {
    spec.validate()?;
    let dims: Vec<f64> = spec.dims.iter().map(|&n| n as f64).collect();
    let cells: f64 = dims.iter().product();
    let expected_e = spec.expected_edges();
    let (e_prime, bound) = match spec.kind {
        ModelKind::Binomial => {
            let p = spec.p.unwrap();
            // cells meeting a fixed cell in at least one vertex, itself excluded
            let disjoint: f64 = dims.iter().map(|n| n - 1.0).product();
            let others = cells - disjoint - 1.0;
            let e_prime = expected_e * (1.0 - p).powf(others);
            (Some(e_prime), Some(expected_e - e_prime))
        }
        ModelKind::Word => {
            let k = spec.k.unwrap() as f64;
            let d = dims.len() as i32;
            let s: f64 = dims.iter().sum();
            let e_prime = expected_e * ((k - 1.0) / k).powf(s - d as f64);
            (Some(e_prime), Some(cells * s / k.powi(d)))
        }
        ModelKind::Symmetric => {
            let p = spec.p.unwrap();
            let n = dims[0];
            let e_prime = expected_e * (1.0 - p).powf(2.0 * n - 4.0);
            (Some(e_prime), Some(2.0 * p * p * n * (n - 1.0) * (n - 2.0)))
        }
        ModelKind::Antisymmetric | ModelKind::Oriented => (None, None),
    };
    Ok(EdgeStatsClosedForm {
        expected_e,
        expected_e_prime: e_prime,
        bound_e_minus_e_prime: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        let c = closed_form_edge_stats(&ModelSpec::binomial(vec![10, 10], 0.1).unwrap()).unwrap();
        assert!((c.expected_e - 10.0).abs() < 1e-12);
        assert!((c.e_prime().unwrap() - 10.0 * 0.9f64.powi(18)).abs() < 1e-12);
        assert!((c.e_prime().unwrap() - 1.500_946_352_969_6).abs() < 1e-9);
        assert!((c.bound().unwrap() - (10.0 - c.e_prime().unwrap())).abs() < 1e-12);
    }

    #[test]
    fn binomial_exponent_counts_neighbours() {
        // d = 3, dims (2,3,4): 24 cells, 6 disjoint from a fixed cell, so 17 neighbours
        let c = closed_form_edge_stats(&ModelSpec::binomial(vec![2, 3, 4], 0.2).unwrap()).unwrap();
        assert!((c.e_prime().unwrap() - 24.0 * 0.2 * 0.8f64.powi(17)).abs() < 1e-12);
    }

    #[test]
    fn word_values() {
        let c = closed_form_edge_stats(&ModelSpec::word(vec![20, 20], 4).unwrap()).unwrap();
        assert!((c.expected_e - 100.0).abs() < 1e-12);
        assert!((c.e_prime().unwrap() - 100.0 * 0.75f64.powi(38)).abs() < 1e-12);
        assert!((c.bound().unwrap() - 400.0 * 40.0 / 16.0).abs() < 1e-9);
    }

    #[test]
    fn symmetric_values() {
        let c = closed_form_edge_stats(&ModelSpec::symmetric(10, 0.1).unwrap()).unwrap();
        assert!((c.expected_e - 9.0).abs() < 1e-12);
        assert!((c.e_prime().unwrap() - 9.0 * 0.9f64.powi(16)).abs() < 1e-12);
        assert!((c.bound().unwrap() - 2.0 * 0.01 * 720.0).abs() < 1e-12);
    }

    #[test]
    fn unsupported_models_still_give_e() {
        let c = closed_form_edge_stats(&ModelSpec::antisymmetric(5, 0.1).unwrap()).unwrap();
        assert!((c.expected_e - 10.0).abs() < 1e-12);
        assert!(matches!(c.e_prime(), Err(Error::Unsupported(_))));
        let c = closed_form_edge_stats(&ModelSpec::oriented(10, 0.1).unwrap()).unwrap();
        assert!((c.expected_e - 4.5).abs() < 1e-12);
        assert!(matches!(c.bound(), Err(Error::Unsupported(_))));
    }
}
