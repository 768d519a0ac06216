//! Per-model scaling constants.

use serde::{Deserialize, Serialize};

/// `(c, lambda, theta)` of a model's approximate median `c N / t^lambda`.
/// `c` is `None` where the Ulam constant `c_d` is unknown (`d >= 3`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MedianScaling {
    pub c: Option<f64>,
    pub lambda: f64,
    pub theta: f64,
}

/// Known Ulam constants: `c_1 = 1`, `c_2 = 2`.
pub fn ulam_constant(d: usize) -> Option<f64> {
    match d {
        1 => Some(1.0),
        2 => Some(2.0),
        _ => None,
    }
}

pub fn binomial_scaling(d: usize) -> MedianScaling {
    let df = d as f64;
    MedianScaling {
        c: ulam_constant(d),
        lambda: 1.0 / df,
        theta: (2.0 * df - 1.0) / (2.0 * df * (df - 1.0)),
    }
}

pub fn word_scaling(d: usize) -> MedianScaling {
    let df = d as f64;
    MedianScaling {
        c: ulam_constant(d),
        lambda: 1.0 - 1.0 / df,
        theta: 1.0 - 1.0 / df + 1.0 / (df * df),
    }
}

/// Symmetric, oriented, and anti-symmetric models.
pub fn square_scaling() -> MedianScaling {
    MedianScaling {
        c: Some(2.0),
        lambda: 0.5,
        theta: 0.75,
    }
}

/// Concentration constant `h`: `1/4` for binomial and symmetric models,
/// `1/(4d)` for the `d`-word model.
pub fn binomial_concentration() -> f64 {
    0.25
}

pub fn word_concentration(d: usize) -> f64 {
    1.0 / (4.0 * d as f64)
}

/// `2 sqrt(p) / (1 + sqrt(p))`, the limit of `L/n` for the planar binomial model.
pub fn lattice_constant(p: f64) -> f64 {
    2.0 * p.sqrt() / (1.0 + p.sqrt())
}
