//! Summaries over per-trial values.

use std::collections::BTreeMap;

use serde::Serialize;

/// Normal quantile used for the reported 95% intervals.
pub const Z_95: f64 = 1.959963984540054;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Distribution {
    /// `(value, count)` in ascending value order.
    pub counts: Vec<(usize, u64)>,
    pub samples: u64,
    pub mean: f64,
    /// Unbiased sample variance; 0 for a single sample.
    pub variance: f64,
    pub support: [usize; 2],
    /// Lower end of the most likely pair of consecutive values (smallest on ties).
    pub modal_pair: [usize; 2],
    pub modal_pair_mass: f64,
}

impl Distribution {
    pub fn from_values(values: impl IntoIterator<Item = usize>) -> Option<Self> {
        let mut counts = BTreeMap::new();
        for v in values {
            *counts.entry(v).or_insert(0u64) += 1;
        }
        let samples: u64 = counts.values().sum();
        if samples == 0 {
            return None;
        }
        let n = samples as f64;
        let mean = counts.iter().map(|(&v, &c)| v as f64 * c as f64).sum::<f64>() / n;
        let variance = if samples > 1 {
            counts.iter().map(|(&v, &c)| c as f64 * (v as f64 - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        let lo = *counts.keys().next().unwrap();
        let hi = *counts.keys().next_back().unwrap();
        let mut best = (lo, 0u64);
        for a in lo..=hi {
            let m = counts.get(&a).copied().unwrap_or(0) + counts.get(&(a + 1)).copied().unwrap_or(0);
            if m > best.1 {
                best = (a, m);
            }
        }
        Some(Self {
            counts: counts.into_iter().collect(),
            samples,
            mean,
            variance,
            support: [lo, hi],
            modal_pair: [best.0, best.0 + 1],
            modal_pair_mass: best.1 as f64 / n,
        })
    }

    pub fn mass_in(&self, lo: usize, hi: usize) -> f64 {
        let inside: u64 = self.counts.iter().filter(|(v, _)| (lo..=hi).contains(v)).map(|(_, c)| c).sum();
        inside as f64 / self.samples as f64
    }

    pub fn fraction_at_most(&self, a: usize) -> (u64, f64) {
        let c: u64 = self.counts.iter().filter(|(v, _)| *v <= a).map(|(_, c)| c).sum();
        (c, c as f64 / self.samples as f64)
    }

    pub fn fraction_at_least(&self, a: usize) -> (u64, f64) {
        let c: u64 = self.counts.iter().filter(|(v, _)| *v >= a).map(|(_, c)| c).sum();
        (c, c as f64 / self.samples as f64)
    }
}

/// Mean and standard error of a sample of counts.
pub fn mean_and_se(values: &[u64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().map(|&v| v as f64).sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|&v| (v as f64 - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Wilson score interval for `successes / trials` at normal quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> [f64; 2] {
    if trials == 0 {
        return [0.0, 1.0];
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    [(center - half).max(0.0), (center + half).min(1.0)]
}
