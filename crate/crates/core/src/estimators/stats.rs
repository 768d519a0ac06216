use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF};

/// Quantile levels reported by default.
pub const DEFAULT_QUANTILES: [f64; 5] = [0.05, 0.25, 0.5, 0.75, 0.95];

/// Two-sided normal quantile for 95% intervals.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Summary of Monte Carlo replicates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub reps: usize,
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
    /// The `floor((r+1)/2)`-th order statistic.
    pub lower_median: f64,
    pub min: f64,
    pub max: f64,
    /// `(level, value)` pairs, value being the `ceil(level*r)`-th order statistic.
    pub quantiles: Vec<(f64, f64)>,
    /// `(value, count)` pairs for integer-valued samples.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub histogram: Option<Vec<(u64, u64)>>,
}

impl SampleStats {
    pub fn from_reals(values: &[f64], levels: &[f64]) -> Self {
        assert!(!values.is_empty(), "no samples");
        let r = values.len();
        let mean = values.iter().sum::<f64>() / r as f64;
        let variance = if r > 1 {
            values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (r - 1) as f64
        } else {
            0.0
        };
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let order_stat = |k: usize| sorted[k.clamp(1, r) - 1];
        let quantiles = levels
            .iter()
            .map(|&q| (q, order_stat((q * r as f64).ceil() as usize)))
            .collect();
        SampleStats {
            reps: r,
            mean,
            variance,
            std_error: (variance / r as f64).sqrt(),
            lower_median: order_stat(r.div_ceil(2)),
            min: sorted[0],
            max: sorted[r - 1],
            quantiles,
            histogram: None,
        }
    }

    pub fn from_counts(values: &[usize], levels: &[f64]) -> Self {
        let reals: Vec<f64> = values.iter().map(|&v| v as f64).collect();
        let mut s = Self::from_reals(&reals, levels);
        let mut hist = std::collections::BTreeMap::new();
        for &v in values {
            *hist.entry(v as u64).or_insert(0u64) += 1;
        }
        s.histogram = Some(hist.into_iter().collect());
        s
    }

    /// Half-width of the normal 95% interval for the mean.
    pub fn ci_half_width(&self) -> f64 {
        Z95 * self.std_error
    }
}

/// One-sided exact (Clopper-Pearson) upper confidence limit for a binomial
/// proportion with `successes` out of `trials`.
pub fn clopper_pearson_upper(successes: u64, trials: u64, confidence: f64) -> f64 {
    assert!(trials > 0 && successes <= trials);
    if successes == trials {
        return 1.0;
    }
    let beta = Beta::new(successes as f64 + 1.0, (trials - successes) as f64).expect("positive shapes");
    beta.inverse_cdf(confidence)
}

/// Largest distance between the empirical CDFs of two samples.
pub fn ks_distance(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut best) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        best = best.max((i as f64 / na - j as f64 / nb).abs());
    }
    best
}

/// Standard error of the sample variance, from the fourth central moment.
pub fn variance_std_error(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let m2 = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let m4 = values.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    ((m4 - m2 * m2).max(0.0) / n).sqrt()
}
