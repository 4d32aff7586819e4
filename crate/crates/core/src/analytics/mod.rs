//! Closed-form expectations and thresholds for H(n, k, p), evaluated in log space.
//!
//! Every quantity here is exact at finite `n` unless its name says
//! otherwise: the expectations are those of the realized counts computed in
//! [`crate::solver`] and [`crate::augmented`]. Factorials come from a
//! cumulative `ln i!` table built once per [`AnalyticContext`]; powers of
//! `1 - p` go through `log1p`.

mod asymptotic;
mod identities;
mod thresholds;

pub use asymptotic::{
    anti_schedule, asymptotic_alpha, ks_alpha_j, next_p, AntiConcentrationSchedule, DEFAULT_SCHEDULE_EPSILON,
};
pub use identities::{check_binom_identity, check_lemma2, falling_int, lemma2_sweep, Lemma2Sweep};
pub use thresholds::{
    compute_rm, compute_sx, compute_sz, predict, GapRegime, PredictionReport, RmResult, SxResult, SzResult,
    CRITICAL_BAND,
};

use thiserror::Error;

use crate::hypergraph::binomial;

/// Default cutoff exponent.
pub const DEFAULT_EPSILON: f64 = 0.1;

#[derive(Debug, Error, PartialEq)]
pub enum AnalyticsError {
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no s satisfies the threshold condition")]
    NoThreshold,
}

fn bad(msg: impl Into<String>) -> AnalyticsError {
    AnalyticsError::BadParameters(msg.into())
}

/// `x (x-1) ... (x-k+2)`: `k - 1` descending factors.
pub fn f_poly(x: f64, k: usize) -> f64 {
    (0..k.saturating_sub(1)).map(|i| x - i as f64).product()
}

/// Inverse of [`f_poly`] on the increasing branch `x > k - 2`, by bisection.
pub fn f_inverse(y: f64, k: usize) -> Result<f64, AnalyticsError> {
    if k < 2 {
        return Err(bad(format!("k={k} < 2")));
    }
    if !y.is_finite() || y <= 0.0 {
        return Err(AnalyticsError::Domain(format!("f_inverse needs finite y > 0, got {y}")));
    }
    let kf = k as f64;
    let mut lo = kf - 2.0;
    let mut hi = kf.max(2.0 * y.powf(1.0 / (kf - 1.0)) + kf);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f_poly(mid, k) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    debug_assert!((f_poly(x, k) - y).abs() <= 1e-9 * y.max(1.0));
    Ok(x)
}

/// `C(a, b)` as a float: exact while it fits 53 bits, rounded beyond.
pub fn choose_f64(a: usize, b: usize) -> f64 {
    match binomial(a as u64, b as u64) {
        Some(c) => c as f64,
        None => (ln_gamma(a as f64 + 1.0) - ln_gamma(b as f64 + 1.0) - ln_gamma((a - b) as f64 + 1.0)).exp(),
    }
}

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `P[Bin(b, p) >= 2]` and its logarithm, stable for tiny `b p`.
pub fn tail_at_least_two(b: f64, p: f64) -> (f64, f64) {
    if b < 2.0 || p <= 0.0 {
        return (0.0, f64::NEG_INFINITY);
    }
    if p >= 1.0 {
        return (1.0, 0.0);
    }
    let ln_q = (-p).ln_1p();
    if b * p < 1.0 {
        // sum of C(b,i) p^i q^(b-i) for i >= 2, relative to the i = 2 term
        let ln_t2 = (b * (b - 1.0) / 2.0).ln() + 2.0 * p.ln() + (b - 2.0) * ln_q;
        let ratio = p / (1.0 - p);
        let (mut term, mut sum, mut i) = (1.0f64, 1.0f64, 2.0f64);
        while i < b && i < 2000.0 {
            term *= (b - i) / (i + 1.0) * ratio;
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
            i += 1.0;
        }
        let ln_f = ln_t2 + sum.ln();
        (ln_f.exp(), ln_f)
    } else {
        let q_b = (b * ln_q).exp();
        let one_edge = b * p * ((b - 1.0) * ln_q).exp();
        let miss = q_b + one_edge;
        (1.0 - miss, (-miss).ln_1p())
    }
}

/// Parameters of the model plus cached logarithms.
#[derive(Clone, Debug)]
pub struct AnalyticContext {
    n: usize,
    k: usize,
    p: f64,
    epsilon: f64,
    d: f64,
    ln_p: f64,
    ln_q: f64,
    ln_factorial: Vec<f64>,
}

impl AnalyticContext {
    /// Requires `2 <= k <= n`, `0 < p <= 1` and `0 < epsilon < 1`.
    pub fn new(n: usize, k: usize, p: f64, epsilon: f64) -> Result<Self, AnalyticsError> {
        if k < 2 || k > n {
            return Err(bad(format!("need 2 <= k <= n, got n={n}, k={k}")));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(bad(format!("need 0 < p <= 1, got {p}")));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(bad(format!("need 0 < epsilon < 1, got {epsilon}")));
        }
        let mut ln_factorial = Vec::with_capacity(n + 1);
        let mut acc = 0.0f64;
        ln_factorial.push(0.0);
        for i in 1..=n {
            acc += (i as f64).ln();
            ln_factorial.push(acc);
        }
        Ok(Self {
            n,
            k,
            p,
            epsilon,
            d: n as f64 * p.powf(1.0 / (k as f64 - 1.0)),
            ln_p: p.ln(),
            ln_q: (-p).ln_1p(),
            ln_factorial,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `n p^(1/(k-1))`.
    pub fn d(&self) -> f64 {
        self.d
    }

    /// `ln(1 - p)`.
    pub fn ln_q(&self) -> f64 {
        self.ln_q
    }

    pub fn ln_n(&self) -> f64 {
        (self.n as f64).ln()
    }

    /// `ln i!` from the cached table.
    pub fn ln_factorial(&self, i: usize) -> f64 {
        self.ln_factorial[i]
    }

    /// `ln C(a, b)` for `b <= a <= n`.
    pub fn ln_choose(&self, a: usize, b: usize) -> f64 {
        if b > a {
            return f64::NEG_INFINITY;
        }
        self.ln_factorial[a] - self.ln_factorial[b] - self.ln_factorial[a - b]
    }

    /// `count * ln(1 - p)` with `0 * ln 0` taken as 0.
    fn q_power(&self, count: f64) -> f64 {
        if count == 0.0 {
            0.0
        } else {
            count * self.ln_q
        }
    }

    /// `ln E[X_s] = ln C(n, s) + C(s, k) ln(1 - p)`.
    pub fn log_expected_xs(&self, s: usize) -> f64 {
        if s > self.n {
            return f64::NEG_INFINITY;
        }
        self.ln_choose(self.n, s) + self.q_power(choose_f64(s, self.k))
    }

    /// `ln E[Y_s]`, the expected number of maximal independent `s`-sets:
    /// `C(n, s) (1-p)^C(s,k) (1 - (1-p)^C(s,k-1))^(n-s)`.
    pub fn log_expected_ys(&self, s: usize) -> f64 {
        if s > self.n {
            return f64::NEG_INFINITY;
        }
        let outside = self.n - s;
        let blocked = if outside == 0 {
            0.0
        } else {
            let b = choose_f64(s, self.k - 1);
            // P[some edge through v closes inside S + v] = 1 - q^b
            let ln_hit = if self.p >= 1.0 {
                if b > 0.0 { 0.0 } else { f64::NEG_INFINITY }
            } else {
                (-(b * self.ln_q).exp_m1()).ln()
            };
            outside as f64 * ln_hit
        };
        self.log_expected_xs(s) + blocked
    }

    /// Probability that a fixed outside vertex closes at least two edges with
    /// a fixed set of `s + r` vertices: `1 - q^B - B p q^(B-1)`,
    /// `B = C(s+r, k-1)`.
    pub fn coverage_probability(&self, s: usize, r: usize) -> f64 {
        tail_at_least_two(choose_f64(s + r, self.k - 1), self.p).0
    }

    pub fn ln_coverage_probability(&self, s: usize, r: usize) -> f64 {
        tail_at_least_two(choose_f64(s + r, self.k - 1), self.p).1
    }

    /// `ln E(n, k, s, r)`, the log expected number of augmented independent
    /// sets of order `s` whose matching has exactly `r` edges:
    ///
    /// `C(n, s+r) (s+r)! / ((s-(k-1)r)! (k!)^r r!) p^r (1-p)^(C(s+r,k) - r) F^(n-s-r)`.
    pub fn log_expected_augmented(&self, s: usize, r: usize) -> Result<f64, AnalyticsError> {
        let k = self.k;
        if (k - 1) * r > s {
            return Err(AnalyticsError::Domain(format!("r={r} exceeds s/(k-1) for s={s}, k={k}")));
        }
        let size = s + r;
        if size > self.n {
            return Err(AnalyticsError::Domain(format!("s+r={size} exceeds n={}", self.n)));
        }
        let lf = &self.ln_factorial;
        let ln_k_fact = lf[k];
        let matchings = lf[size] - lf[s - (k - 1) * r] - r as f64 * ln_k_fact - lf[r];
        let inside = r as f64 * self.ln_p + self.q_power(choose_f64(size, k) - r as f64);
        let outside = self.n - size;
        let cover = if outside == 0 { 0.0 } else { outside as f64 * self.ln_coverage_probability(s, r) };
        Ok(self.ln_choose(self.n, size) + matchings + inside + cover)
    }
}
