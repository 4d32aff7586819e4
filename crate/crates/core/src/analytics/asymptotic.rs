//! Leading-order asymptotics and the anti-concentration schedule.
//!
//! These are asymptotic statements evaluated at finite `n` with vanishing
//! terms dropped; they are reported for comparison, never used as exact
//! values.

use serde::Serialize;

use super::{f_inverse, ln_gamma, AnalyticsError};

/// Default slack for the general-j window length.
pub const DEFAULT_SCHEDULE_EPSILON: f64 = 0.01;

fn domain(msg: impl Into<String>) -> AnalyticsError {
    AnalyticsError::Domain(msg.into())
}

fn ln_d(n: usize, k: usize, p: f64) -> f64 {
    (n as f64).ln() + p.ln() / (k as f64 - 1.0)
}

/// `(j+1) (j-1)! (k-1) (k-1-j)!`; equals `k!` at `j = k - 1`.
pub(crate) fn level_constant(k: usize, j: usize) -> f64 {
    let fact = |m: usize| (1..=m).map(|i| i as f64).product::<f64>();
    (j as f64 + 1.0) * fact(j - 1) * (k as f64 - 1.0) * fact(k - 1 - j)
}

/// Leading-order `alpha_j` for `1 <= j <= k-1`:
/// `n^(1-(k-1)/j) [(j+1)(j-1)!(k-1)(k-1-j)! ln(n p^(1/(k-1))) / p]^(1/j)`.
pub fn ks_alpha_j(n: usize, k: usize, j: usize, p: f64) -> Result<f64, AnalyticsError> {
    if k < 2 || j == 0 || j >= k {
        return Err(AnalyticsError::BadParameters(format!("need 1 <= j <= k-1, got j={j}, k={k}")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(domain(format!("p={p} outside (0, 1]")));
    }
    let ld = ln_d(n, k, p);
    if ld <= 0.0 {
        return Err(domain("d = n p^(1/(k-1)) must exceed 1"));
    }
    let (nf, kf, jf) = (n as f64, k as f64, j as f64);
    Ok(nf.powf(1.0 - (kf - 1.0) / jf) * (level_constant(k, j) * ld / p).powf(1.0 / jf))
}

/// `f^{-1}( k! [ln d - ln (ln d)^(1/(k-1)) + ln(e / (k!)^(1/(k-1)))] / p )`.
pub fn asymptotic_alpha(n: usize, k: usize, p: f64) -> Result<f64, AnalyticsError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain(format!("p={p} outside (0, 1)")));
    }
    let ld = ln_d(n, k, p);
    if ld <= 0.0 {
        return Err(domain("d <= 1: outside the asymptotic domain"));
    }
    let km1 = k as f64 - 1.0;
    let ln_k_fact = ln_gamma(k as f64 + 1.0);
    let bracket = ld - ld.ln() / km1 + 1.0 - ln_k_fact / km1;
    let y = ln_k_fact.exp() * bracket / p;
    if y <= 0.0 {
        return Err(domain("non-positive argument: outside the asymptotic domain"));
    }
    f_inverse(y, k)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AntiConcentrationSchedule {
    pub n: usize,
    pub k: usize,
    pub j: usize,
    pub p: f64,
    /// Slack in the general-j window length.
    pub epsilon: f64,
    /// `p + n^(-k/2) sqrt(p)`.
    pub p_prime: f64,
    /// Window length for `j = k - 1`:
    /// `n^(-k/2) p^(-1/2-1/(k-1)) (k! ln d)^(1/(k-1)) / 3`.
    pub ell: f64,
    /// Window length for level `j`:
    /// `(1 - 2^(-1/j) - eps) n^(1-k/2-(k-1)/j) p^(-1/2-1/j) (c_j ln d)^(1/j)`.
    pub ell_j: f64,
    /// `n^(k/2) sqrt(p)`, an upper bound on the chain length.
    pub z_bound: f64,
    /// Number of steps `p -> p'` until `p_z >= 2p`, when `z_bound` is small
    /// enough to iterate.
    pub chain_length: Option<u64>,
    /// Admissible upper limit on `p` for the `j = k - 1` statement.
    pub p_upper: f64,
    /// Admissible upper limit on `p` for the level-`j` statement.
    pub p_upper_j: f64,
    /// `n^(-(k-1)) < p` and `p` below both upper limits.
    pub in_admissible_band: bool,
}

const CHAIN_ITERATION_CAP: f64 = 1e7;

/// `n^(-k/2)`, using an integer power where possible so that round values
/// stay exact.
fn n_pow_neg_half_k(n: usize, k: usize) -> f64 {
    let nf = n as f64;
    let whole = nf.powi((k / 2) as i32);
    let full = if k % 2 == 1 { whole * nf.sqrt() } else { whole };
    1.0 / full
}

/// One step of the chain, `p + n^(-k/2) sqrt(p)`.
pub fn next_p(n: usize, k: usize, p: f64) -> f64 {
    p + n_pow_neg_half_k(n, k) * p.sqrt()
}

/// The step `p -> p + n^(-k/2) sqrt(p)` and the window lengths it rules out.
pub fn anti_schedule(
    n: usize,
    k: usize,
    j: usize,
    p: f64,
    epsilon: f64,
) -> Result<AntiConcentrationSchedule, AnalyticsError> {
    if k < 2 || j == 0 || j >= k || n < k {
        return Err(AnalyticsError::BadParameters(format!("need 1 <= j <= k-1 and k <= n, got n={n} k={k} j={j}")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(domain(format!("p={p} outside (0, 1)")));
    }
    let ld = ln_d(n, k, p);
    if ld <= 0.0 {
        return Err(domain("d = n p^(1/(k-1)) must exceed 1"));
    }
    let (nf, kf, jf) = (n as f64, k as f64, j as f64);
    let slack = 1.0 - 2f64.powf(-1.0 / jf) - epsilon;
    if epsilon.is_nan() || epsilon <= 0.0 || slack <= 0.0 {
        return Err(AnalyticsError::BadParameters(format!(
            "epsilon={epsilon} must lie in (0, 1 - 2^(-1/j)) for j={j}"
        )));
    }
    let k_fact = ln_gamma(kf + 1.0).exp();
    let inv_half = n_pow_neg_half_k(n, k);
    let p_prime = next_p(n, k, p);
    let ell = inv_half * p.powf(-0.5 - 1.0 / (kf - 1.0)) * (k_fact * ld).powf(1.0 / (kf - 1.0)) / 3.0;
    let c_j = level_constant(k, j);
    let ell_j = slack * nf.powf(1.0 - kf / 2.0 - (kf - 1.0) / jf) * p.powf(-0.5 - 1.0 / jf) * (c_j * ld).powf(1.0 / jf);
    let z_bound = p.sqrt() / inv_half;

    let p_upper = ((k_fact * nf.ln()).powf(1.0 / (kf - 1.0)) * inv_half / (6.0 * (kf + 1.0).powf(1.0 / (kf - 1.0))))
        .powf(2.0 * (kf - 1.0) / (kf + 1.0));
    let p_upper_j = (slack * nf.powf(1.0 - kf / 2.0 - (kf - 1.0) / jf) / 2.0).powf(2.0 * jf / (jf + 2.0))
        * (c_j * nf.ln() / (kf + 1.0)).powf(2.0 / (jf + 2.0));
    let in_admissible_band = p > nf.powf(-(kf - 1.0)) && p < p_upper && p < p_upper_j;
    if !in_admissible_band {
        log::warn!("p={p} is outside the admissible band (n={n}, k={k}, j={j})");
    }

    let chain_length = (z_bound <= CHAIN_ITERATION_CAP).then(|| {
        let mut q = p;
        let mut z = 0u64;
        while q < 2.0 * p {
            q += inv_half * q.sqrt();
            z += 1;
        }
        z
    });

    Ok(AntiConcentrationSchedule {
        n,
        k,
        j,
        p,
        epsilon,
        p_prime,
        ell,
        ell_j,
        z_bound,
        chain_length,
        p_upper,
        p_upper_j,
        in_admissible_band,
    })
}
