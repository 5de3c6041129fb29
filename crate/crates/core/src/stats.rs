//! Binomial intervals and goodness-of-fit tests for the Monte Carlo checks.

use sha2::{Digest, Sha256};
use statrs::distribution::{Beta, ChiSquared, ContinuousCDF};

/// Two-sided Clopper–Pearson interval for `successes` out of `n` at level `confidence`.
pub fn clopper_pearson(successes: u64, n: u64, confidence: f64) -> (f64, f64) {
    assert!(n > 0 && successes <= n);
    let alpha = 1.0 - confidence;
    let k = successes as f64;
    let nf = n as f64;
    let low = if successes == 0 {
        0.0
    } else {
        Beta::new(k, nf - k + 1.0).unwrap().inverse_cdf(alpha / 2.0)
    };
    let high = if successes == n {
        1.0
    } else {
        Beta::new(k + 1.0, nf - k).unwrap().inverse_cdf(1.0 - alpha / 2.0)
    };
    (low, high)
}

/// Binomial frequency with its 99% interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequency {
    pub hits: u64,
    pub n: u64,
    pub estimate: f64,
    pub ci: (f64, f64),
}

impl Frequency {
    pub fn new(hits: u64, n: u64) -> Self {
        Frequency {
            hits,
            n,
            estimate: hits as f64 / n as f64,
            ci: clopper_pearson(hits, n, 0.99),
        }
    }

    pub fn half_width(&self) -> f64 {
        (self.ci.1 - self.ci.0) / 2.0
    }

    /// Standard error of the estimate under the bound `p`.
    pub fn sigma_at(&self, p: f64) -> f64 {
        (p * (1.0 - p) / self.n as f64).sqrt()
    }
}

/// Pearson chi-square statistic and p-value against the uniform law on the cells.
pub fn chi_square_uniform(counts: &[u64]) -> (f64, f64) {
    assert!(counts.len() >= 2);
    let n: u64 = counts.iter().sum();
    let expected = n as f64 / counts.len() as f64;
    let stat: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dist = ChiSquared::new((counts.len() - 1) as f64).unwrap();
    (stat, 1.0 - dist.cdf(stat))
}

/// Per-sample seed: a hash of the base seed, a claim label and the sample index.
pub fn sample_seed(base: u64, label: &str, index: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(base.to_le_bytes());
    h.update(label.as_bytes());
    h.update(index.to_le_bytes());
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().unwrap())
}
