//! Seeded Monte Carlo harness.
//!
//! Trial `i` draws everything from `derive_seed(master, i)`, so any record can
//! be reproduced alone and results do not depend on the worker count. Trials
//! run on a rayon pool and are collected in index order.

mod output;
mod stats;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytics::{self, AnalyticContext, AnalyticsError, PredictionReport};
use crate::augmented::{self, AugmentedError, Budget};
use crate::hypergraph::{
    sample_hnkp, sample_with_uniforms, subset_count, Hypergraph, HypergraphError, ModelParams,
};
use crate::rng::{derive_seed, RNG_ALGORITHM};
use crate::solver::{self, SolveOptions, SolverError};

pub use output::{round_significant, to_stable_json, write_csv, SIGNIFICANT_DIGITS};
pub use stats::{mean_and_se, wilson_interval, Distribution, Z_95};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_TIMEOUT_SECS: f64 = 60.0;
/// Largest `C(n, k)` accepted by the exhaustive Lemma-1 check.
pub const EXHAUSTIVE_EDGE_CAP: u128 = 24;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid experiment config: {0}")]
    Config(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Augmented(#[from] AugmentedError),
    #[error(transparent)]
    Analytics(#[from] AnalyticsError),
    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Concentration,
    Lemma1Fuzz,
    ExpectationCheck,
    Coupling,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: ModelParams,
    /// Independence level; `None` means `k - 1`.
    pub j: Option<usize>,
    pub trials: u64,
    pub mode: Mode,
    pub s: Option<usize>,
    pub r: Option<usize>,
    /// Upper probability for [`Mode::Coupling`].
    pub p2: Option<f64>,
    pub parallelism: usize,
    pub timeout_secs: f64,
    /// Cutoff exponent for the predicted window.
    pub epsilon: f64,
}

impl ExperimentConfig {
    pub fn new(mode: Mode, model: ModelParams, trials: u64) -> Self {
        Self {
            model,
            j: None,
            trials,
            mode,
            s: None,
            r: None,
            p2: None,
            parallelism: 1,
            timeout_secs: DEFAULT_TIMEOUT_SECS,
            epsilon: analytics::DEFAULT_EPSILON,
        }
    }

    pub fn level(&self) -> usize {
        self.j.unwrap_or(self.model.k - 1)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::Config(m));
        self.model.validate()?;
        let k = self.model.k;
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.parallelism == 0 {
            return bad("parallelism must be at least 1".into());
        }
        if self.timeout_secs.is_nan() || self.timeout_secs <= 0.0 {
            return bad(format!("timeout must be positive, got {}", self.timeout_secs));
        }
        let j = self.level();
        if j == 0 || j >= k {
            return bad(format!("j={j} must satisfy 1 <= j <= k-1 (k={k})"));
        }
        match self.mode {
            Mode::Lemma1Fuzz | Mode::ExpectationCheck if j != k - 1 => {
                return bad(format!("{:?} is defined for j = k-1 only", self.mode));
            }
            Mode::ExpectationCheck => match self.s {
                None => return bad("expectation check needs s".into()),
                Some(s) if s > self.model.n => return bad(format!("s={s} exceeds n={}", self.model.n)),
                Some(s) => {
                    if let Some(r) = self.r {
                        if (k - 1) * r > s || s + r > self.model.n {
                            return bad(format!("r={r} infeasible for s={s}"));
                        }
                    }
                }
            },
            Mode::Coupling => match self.p2 {
                Some(p2) if p2 >= self.model.p && p2 <= 1.0 => {}
                other => return bad(format!("coupling needs p <= p2 <= 1, got p={} p2={other:?}", self.model.p)),
            },
            _ => {}
        }
        Ok(())
    }
}

/// Config as echoed in reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    #[serde(flatten)]
    pub config: ExperimentConfig,
    pub rng_algorithm: &'static str,
}

impl std::ops::Deref for ConfigEcho {
    type Target = ExperimentConfig;
    fn deref(&self) -> &ExperimentConfig {
        &self.config
    }
}

/// One trial. Only the fields of the running mode are set.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hat_alpha: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_p2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_p_prime: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_sr: Option<u64>,
    pub micros: u64,
    pub timed_out: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub quantity: String,
    pub analytic: f64,
    pub empirical: f64,
    pub standard_error: f64,
    /// `(empirical - analytic) / standard_error`; 0 when both agree with
    /// zero spread, `None` when the spread is zero and they disagree.
    pub z: Option<f64>,
}

impl Comparison {
    fn new(quantity: impl Into<String>, analytic: f64, values: &[u64]) -> Self {
        let (empirical, standard_error) = mean_and_se(values);
        let diff = empirical - analytic;
        let z = if standard_error > 0.0 {
            Some(diff / standard_error)
        } else if diff.abs() <= 1e-12 * analytic.abs().max(1.0) {
            Some(0.0)
        } else {
            None
        };
        Self { quantity: quantity.into(), analytic, empirical, standard_error, z }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindowSummary {
    pub window: [usize; 2],
    pub mass: f64,
    pub prediction: PredictionReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateSummary {
    pub violations: u64,
    pub violating_trials: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverlapSummary {
    pub p: f64,
    pub p_prime: f64,
    /// Integer maximizing `min(P[alpha(H_p) <= a], P[alpha(H_p') >= a])`.
    pub a: usize,
    pub prob_at_most_a: f64,
    pub prob_at_most_a_ci: [f64; 2],
    pub prob_prime_at_least_a: f64,
    pub prob_prime_at_least_a_ci: [f64; 2],
    pub both_exceed_one_twentieth: bool,
    pub alpha_p_prime: Distribution,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CouplingSummary {
    pub p1: f64,
    pub p2: f64,
    pub monotonicity: GateSummary,
    pub alpha_p2: Option<Distribution>,
    pub overlap: Option<OverlapSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub completed: u64,
    pub timed_out: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Distribution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub comparisons: Vec<Comparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma1: Option<GateSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coupling: Option<CouplingSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub config: ConfigEcho,
    pub records: Vec<TrialRecord>,
    pub aggregate: Aggregate,
}

impl ExperimentReport {
    /// Violations of hard-gated invariants (Lemma-1 equality, coupling monotonicity).
    pub fn gated_violations(&self) -> u64 {
        let a = &self.aggregate;
        a.lemma1.as_ref().map_or(0, |g| g.violations) + a.coupling.as_ref().map_or(0, |c| c.monotonicity.violations)
    }

    /// Copy with every wall-time field zeroed, for byte comparisons.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.records.iter_mut().for_each(|t| t.micros = 0);
        r
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        to_stable_json(self)
    }
}

/// Runs the mode named in `cfg`.
pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    match cfg.mode {
        Mode::Concentration => run_concentration(cfg),
        Mode::Lemma1Fuzz => run_lemma1_fuzz(cfg),
        Mode::ExpectationCheck => run_expectation_check(cfg),
        Mode::Coupling => run_coupling(cfg),
    }
}

fn expect_mode(cfg: &ExperimentConfig, mode: Mode) -> Result<(), ExperimentError> {
    if cfg.mode != mode {
        return Err(ExperimentError::Config(format!("expected mode {mode:?}, got {:?}", cfg.mode)));
    }
    cfg.validate()
}

/// Runs `trial` for every index on `cfg.parallelism` workers. A solver
/// timeout marks the record instead of failing the run.
fn run_trials<F>(cfg: &ExperimentConfig, trial: F) -> Result<Vec<TrialRecord>, ExperimentError>
where
    F: Fn(u64, &mut TrialRecord, Option<Instant>) -> Result<(), ExperimentError> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.parallelism).build()?;
    let timeout = Duration::from_secs_f64(cfg.timeout_secs);
    pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|i| {
                let seed = derive_seed(cfg.model.seed, i);
                let mut rec = TrialRecord { trial_index: i, seed, ..Default::default() };
                let start = Instant::now();
                match trial(seed, &mut rec, Some(start + timeout)) {
                    Ok(()) => {}
                    Err(ExperimentError::Solver(SolverError::Timeout)) => {
                        log::warn!("trial {i} timed out");
                        rec = TrialRecord { trial_index: i, seed, timed_out: true, ..Default::default() };
                    }
                    Err(e) => return Err(e),
                }
                rec.micros = start.elapsed().as_micros() as u64;
                Ok(rec)
            })
            .collect()
    })
}

fn solve(h: &Hypergraph, j: usize, deadline: Option<Instant>) -> Result<usize, ExperimentError> {
    Ok(solver::solve_alpha(h, j, &SolveOptions { deadline })?.alpha)
}

fn report(cfg: &ExperimentConfig, records: Vec<TrialRecord>, aggregate: Aggregate) -> ExperimentReport {
    ExperimentReport {
        schema_version: SCHEMA_VERSION,
        config: ConfigEcho { config: cfg.clone(), rng_algorithm: RNG_ALGORITHM },
        records,
        aggregate,
    }
}

fn base_aggregate(records: &[TrialRecord]) -> Aggregate {
    let timed_out = records.iter().filter(|r| r.timed_out).count() as u64;
    Aggregate {
        completed: records.len() as u64 - timed_out,
        timed_out,
        alpha: Distribution::from_values(records.iter().filter_map(|r| r.alpha)),
        window: None,
        comparisons: Vec::new(),
        lemma1: None,
        coupling: None,
    }
}

/// Exact `alpha_j` of independent samples, its empirical distribution and
/// the mass on the predicted window `{s_z, s_z + 1}`.
pub fn run_concentration(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    expect_mode(cfg, Mode::Concentration)?;
    let j = cfg.level();
    let records = run_trials(cfg, |seed, rec, deadline| {
        let h = sample_hnkp(&ModelParams { seed, ..cfg.model })?;
        rec.alpha = Some(solve(&h, j, deadline)?);
        Ok(())
    })?;
    let mut agg = base_aggregate(&records);
    if j == cfg.model.k - 1 {
        let m = &cfg.model;
        let prediction = AnalyticContext::new(m.n, m.k, m.p, cfg.epsilon).and_then(|c| analytics::predict(&c));
        match (prediction, &agg.alpha) {
            (Ok(prediction), Some(dist)) => {
                let window = prediction.window;
                agg.window = Some(WindowSummary { window, mass: dist.mass_in(window[0], window[1]), prediction });
            }
            (Err(e), _) => log::info!("no predicted window: {e}"),
            _ => {}
        }
    }
    Ok(report(cfg, records, agg))
}

/// Compares `hat_alpha` with `alpha_{k-1}` on every sample.
pub fn run_lemma1_fuzz(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    expect_mode(cfg, Mode::Lemma1Fuzz)?;
    let records = run_trials(cfg, |seed, rec, deadline| {
        let h = sample_hnkp(&ModelParams { seed, ..cfg.model })?;
        rec.alpha = Some(solve(&h, h.k() - 1, deadline)?);
        rec.hat_alpha = Some(augmented::hat_alpha_with(&h, &mut Budget::default())?);
        Ok(())
    })?;
    let mut agg = base_aggregate(&records);
    let violating_trials: Vec<u64> =
        records.iter().filter(|r| !r.timed_out && r.alpha != r.hat_alpha).map(|r| r.trial_index).collect();
    agg.lemma1 = Some(GateSummary { violations: violating_trials.len() as u64, violating_trials });
    Ok(report(cfg, records, agg))
}

/// Result of checking every k-uniform hypergraph on `n` vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExhaustiveLemma1 {
    pub n: usize,
    pub k: usize,
    pub graphs: u64,
    /// Graphs given as bitmasks over colex ranks of their edges.
    pub violating_graphs: Vec<u64>,
}

/// Lemma-1 check over all `2^C(n,k)` hypergraphs, in parallel.
pub fn run_lemma1_exhaustive(n: usize, k: usize) -> Result<ExhaustiveLemma1, ExperimentError> {
    ModelParams::new(n, k, 0.0, 0)?;
    let total = subset_count(n, k)?;
    if total > EXHAUSTIVE_EDGE_CAP {
        return Err(ExperimentError::Config(format!("C({n},{k}) = {total} exceeds {EXHAUSTIVE_EDGE_CAP}")));
    }
    let subsets: Vec<Vec<usize>> = crate::hypergraph::ColexSubsets::new(n, k).collect();
    let graphs = 1u64 << total;
    let violating: Result<Vec<Option<u64>>, ExperimentError> = (0..graphs)
        .into_par_iter()
        .map(|bits| {
            let edges = subsets.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, e)| e.clone());
            let h = Hypergraph::new(n, k, edges)?;
            let alpha = solver::alpha_j(&h, k - 1)?;
            let hat = augmented::hat_alpha(&h)?;
            Ok((alpha != hat).then_some(bits))
        })
        .collect();
    let violating_graphs = violating?.into_iter().flatten().collect();
    Ok(ExhaustiveLemma1 { n, k, graphs, violating_graphs })
}

/// Empirical means of `X_s`, `Y_s` and, when `r` is set, `Z_{s,r}` against
/// their exact expectations.
pub fn run_expectation_check(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    expect_mode(cfg, Mode::ExpectationCheck)?;
    let s = cfg.s.expect("validated");
    let k = cfg.model.k;
    let records = run_trials(cfg, |seed, rec, _| {
        let h = sample_hnkp(&ModelParams { seed, ..cfg.model })?;
        rec.x_s = Some(solver::count_independent_sets(&h, s, k - 1)?);
        rec.y_s = Some(solver::count_maximal_independent_sets(&h, s)?);
        if let Some(r) = cfg.r {
            rec.z_sr = Some(augmented::count_augmented(&h, s, r)?);
        }
        Ok(())
    })?;
    let mut agg = base_aggregate(&records);
    let m = &cfg.model;
    match AnalyticContext::new(m.n, m.k, m.p, cfg.epsilon) {
        Ok(ctx) => {
            let column = |f: fn(&TrialRecord) -> Option<u64>| records.iter().filter_map(f).collect::<Vec<_>>();
            agg.comparisons.push(Comparison::new(format!("X_{s}"), ctx.log_expected_xs(s).exp(), &column(|r| r.x_s)));
            agg.comparisons.push(Comparison::new(format!("Y_{s}"), ctx.log_expected_ys(s).exp(), &column(|r| r.y_s)));
            if let Some(r) = cfg.r {
                let analytic = ctx.log_expected_augmented(s, r)?.exp();
                agg.comparisons.push(Comparison::new(format!("Z_{s},{r}"), analytic, &column(|r| r.z_sr)));
            }
        }
        Err(e) => log::warn!("no analytic comparison: {e}"),
    }
    Ok(report(cfg, records, agg))
}

/// Shared-uniform coupling of `H_{p1} ⊆ H_{p2}` with the pathwise check
/// `alpha_j(H_{p2}) <= alpha_j(H_{p1})`, plus the overlap estimate for
/// `p = p1` and `p' = p + n^(-k/2) sqrt(p)`.
pub fn run_coupling(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    expect_mode(cfg, Mode::Coupling)?;
    let (n, k, p1) = (cfg.model.n, cfg.model.k, cfg.model.p);
    let p2 = cfg.p2.expect("validated");
    let j = cfg.level();
    let p_prime = analytics::next_p(n, k, p1);
    let with_overlap = p1 > 0.0 && p_prime <= 1.0;
    let records = run_trials(cfg, |seed, rec, deadline| {
        let low = sample_with_uniforms(n, k, p1, seed)?;
        let high = sample_with_uniforms(n, k, p2, seed)?;
        rec.alpha = Some(solve(&low, j, deadline)?);
        rec.alpha_p2 = Some(solve(&high, j, deadline)?);
        if with_overlap {
            let mid = sample_with_uniforms(n, k, p_prime, seed)?;
            rec.alpha_p_prime = Some(solve(&mid, j, deadline)?);
        }
        Ok(())
    })?;
    let mut agg = base_aggregate(&records);
    let violating_trials: Vec<u64> = records
        .iter()
        .filter(|r| matches!((r.alpha, r.alpha_p2), (Some(a), Some(b)) if b > a))
        .map(|r| r.trial_index)
        .collect();
    let overlap = match (&agg.alpha, Distribution::from_values(records.iter().filter_map(|r| r.alpha_p_prime))) {
        (Some(low), Some(mid)) => Some(overlap_summary(p1, p_prime, low, mid)),
        _ => None,
    };
    agg.coupling = Some(CouplingSummary {
        p1,
        p2,
        monotonicity: GateSummary { violations: violating_trials.len() as u64, violating_trials },
        alpha_p2: Distribution::from_values(records.iter().filter_map(|r| r.alpha_p2)),
        overlap,
    });
    Ok(report(cfg, records, agg))
}

fn overlap_summary(p: f64, p_prime: f64, low: &Distribution, mid: Distribution) -> OverlapSummary {
    let lo = low.support[0].min(mid.support[0]);
    let hi = low.support[1].max(mid.support[1]);
    let score = |a: usize| low.fraction_at_most(a).1.min(mid.fraction_at_least(a).1);
    let mut a = lo;
    for cand in lo..=hi {
        if score(cand) > score(a) {
            a = cand;
        }
    }
    let (c_low, f_low) = low.fraction_at_most(a);
    let (c_mid, f_mid) = mid.fraction_at_least(a);
    OverlapSummary {
        p,
        p_prime,
        a,
        prob_at_most_a: f_low,
        prob_at_most_a_ci: wilson_interval(c_low, low.samples, Z_95),
        prob_prime_at_least_a: f_mid,
        prob_prime_at_least_a_ci: wilson_interval(c_mid, mid.samples, Z_95),
        both_exceed_one_twentieth: f_low > 0.05 && f_mid > 0.05,
        alpha_p_prime: mid,
    }
}
