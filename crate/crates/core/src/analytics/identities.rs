//! Exact integer identities for binomial differences.

use serde::Serialize;

use super::AnalyticsError;
use crate::hypergraph::binomial;

/// `t (t-1) ... (t-k+2)` in integers; `None` on overflow. Zero for `t <= k - 2`.
pub fn falling_int(t: u64, k: u64) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 0..k.saturating_sub(1) {
        if t < i {
            return Some(0);
        }
        acc = acc.checked_mul((t - i) as u128)?;
    }
    Some(acc)
}

fn factorial(m: u64) -> Option<u128> {
    (1..=m as u128).try_fold(1u128, |a, i| a.checked_mul(i))
}

fn overflow() -> AnalyticsError {
    AnalyticsError::Domain("integer overflow".into())
}

/// `C(t+1, k) - C(t, k) == f(t) / (k-1)!`, exactly.
pub fn check_binom_identity(t: u64, k: u64) -> Result<bool, AnalyticsError> {
    if k < 2 || t < k {
        return Err(AnalyticsError::BadParameters(format!("need 2 <= k <= t, got t={t}, k={k}")));
    }
    let lhs = binomial(t + 1, k).ok_or_else(overflow)? - binomial(t, k).ok_or_else(overflow)?;
    let f = falling_int(t, k).ok_or_else(overflow)?;
    let fact = factorial(k - 1).ok_or_else(overflow)?;
    Ok(f % fact == 0 && lhs == f / fact)
}

/// `C(t,k) - C(r,k) >= (t-r) (1 - (1+1/k) delta) f(t-1) / (k-1)!` for
/// `t >= r` with `f(r) >= (1 - delta) f(t)`.
pub fn check_lemma2(t: u64, r: u64, k: u64, delta: f64) -> Result<bool, AnalyticsError> {
    if k < 2 || t < k || r > t {
        return Err(AnalyticsError::BadParameters(format!("need 2 <= k <= t and r <= t, got t={t} r={r} k={k}")));
    }
    let ft = falling_int(t, k).ok_or_else(overflow)? as f64;
    let fr = falling_int(r, k).ok_or_else(overflow)? as f64;
    if fr < (1.0 - delta) * ft {
        return Err(AnalyticsError::BadParameters(format!("f({r}) < (1 - {delta}) f({t})")));
    }
    let lhs = (binomial(t, k).ok_or_else(overflow)? - binomial(r, k).ok_or_else(overflow)?) as f64;
    let kf = k as f64;
    let rhs = (t - r) as f64 * (1.0 - (1.0 + 1.0 / kf) * delta) * falling_int(t - 1, k).ok_or_else(overflow)? as f64
        / factorial(k - 1).ok_or_else(overflow)? as f64;
    Ok(lhs >= rhs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma2Sweep {
    pub k: u64,
    pub delta: f64,
    pub t_max: u64,
    /// First `t` at which the inequality holds.
    pub onset: Option<u64>,
    /// Values of `t` at or after the onset where it fails.
    pub violations_after_onset: Vec<u64>,
}

/// Sweeps `t` over `k..=t_max` with `r` the smallest integer such that
/// `f(r) >= (1 - delta) f(t)`.
pub fn lemma2_sweep(k: u64, delta: f64, t_max: u64) -> Result<Lemma2Sweep, AnalyticsError> {
    let mut onset = None;
    let mut violations_after_onset = Vec::new();
    for t in k..=t_max {
        let target = (1.0 - delta) * falling_int(t, k).ok_or_else(overflow)? as f64;
        // f is increasing on integers >= k-1, so binary search for r
        let (mut lo, mut hi) = (k - 1, t);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if falling_int(mid, k).ok_or_else(overflow)? as f64 >= target {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let holds = check_lemma2(t, lo, k, delta)?;
        match (holds, onset) {
            (true, None) => onset = Some(t),
            (false, Some(_)) => violations_after_onset.push(t),
            _ => {}
        }
    }
    Ok(Lemma2Sweep { k, delta, t_max, onset, violations_after_onset })
}
