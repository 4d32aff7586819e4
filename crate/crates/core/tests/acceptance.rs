//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the console; exits non-zero if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hyperalpha::analytics::{
    anti_schedule, check_binom_identity, compute_rm, compute_sx, compute_sz, f_inverse, f_poly, ks_alpha_j,
    lemma2_sweep, AnalyticContext, DEFAULT_SCHEDULE_EPSILON,
};
use hyperalpha::experiments::{
    run, run_concentration, run_coupling, run_expectation_check, run_lemma1_exhaustive, run_lemma1_fuzz,
    ExperimentConfig, ExperimentReport, Mode,
};
use hyperalpha::hypergraph::ModelParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cfg(mode: Mode, n: usize, k: usize, p: f64, seed: u64, trials: u64) -> ExperimentConfig {
    ExperimentConfig::new(mode, ModelParams::new(n, k, p, seed).unwrap(), trials)
}

fn lemma1_equivalence() -> Outcome {
    let start = Instant::now();
    let ex = run_lemma1_exhaustive(5, 3).map_err(|e| e.to_string())?;
    ensure(ex.graphs == 1024, format!("checked {} graphs", ex.graphs))?;
    ensure(ex.violating_graphs.is_empty(), format!("exhaustive violations {:?}", ex.violating_graphs))?;
    let mut total = 0;
    for (i, (n, k, p)) in [(8, 3, 0.2), (8, 3, 0.5), (8, 3, 0.8), (7, 4, 0.3)].into_iter().enumerate() {
        let rep = run_lemma1_fuzz(&cfg(Mode::Lemma1Fuzz, n, k, p, 100 + i as u64, 10_000)).map_err(|e| e.to_string())?;
        ensure(rep.aggregate.completed == 10_000, format!("({n},{k},{p}) completed {}", rep.aggregate.completed))?;
        ensure(rep.gated_violations() == 0, format!("({n},{k},{p}) violations {}", rep.gated_violations()))?;
        total += rep.aggregate.completed;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 300.0, format!("took {secs:.0}s"))?;
    Ok(format!("1024 exhaustive + {total} random instances, 0 violations, {secs:.1}s"))
}

fn expectation_exactness() -> Outcome {
    let start = Instant::now();
    let z_of = |rep: &ExperimentReport, prefix: &str| {
        rep.aggregate.comparisons.iter().find(|c| c.quantity.starts_with(prefix)).unwrap().clone()
    };
    let mut lines = Vec::new();

    let mut c = cfg(Mode::ExpectationCheck, 12, 3, 0.3, 201, 100_000);
    c.s = Some(5);
    let rep = run_expectation_check(&c).map_err(|e| e.to_string())?;
    let x = z_of(&rep, "X_");
    let closed = 792.0 * 0.7f64.powi(10);
    ensure((x.analytic - closed).abs() < 1e-9 * closed, format!("X analytic {} vs {closed}", x.analytic))?;
    lines.push(("X_5 (12,3,0.3)", x.empirical, closed, x.standard_error));

    let mut c = cfg(Mode::ExpectationCheck, 6, 3, 0.5, 202, 100_000);
    c.s = Some(3);
    c.r = Some(1);
    let rep = run_expectation_check(&c).map_err(|e| e.to_string())?;
    let z = z_of(&rep, "Z_");
    let hand = 15.0 * 4.0 * 0.5 * 0.125 * 0.890625f64.powi(2);
    ensure((hand - 2.97455).abs() < 5e-6, "hand value")?;
    lines.push(("Z_3,1 (6,3,0.5)", z.empirical, hand, z.standard_error));

    let mut c = cfg(Mode::ExpectationCheck, 10, 3, 0.5, 203, 100_000);
    c.s = Some(4);
    c.r = Some(1);
    let rep = run_expectation_check(&c).map_err(|e| e.to_string())?;
    let z = z_of(&rep, "Z_");
    lines.push(("Z_4,1 (10,3,0.5)", z.empirical, z.analytic, z.standard_error));

    let mut c = cfg(Mode::ExpectationCheck, 10, 3, 0.4, 204, 100_000);
    c.s = Some(5);
    let rep = run_expectation_check(&c).map_err(|e| e.to_string())?;
    let y = z_of(&rep, "Y_");
    let formula = 252.0 * 0.6f64.powi(10) * (1.0 - 0.6f64.powi(10)).powi(5);
    ensure((y.analytic - formula).abs() < 1e-9 * formula, format!("Y analytic {} vs {formula}", y.analytic))?;
    lines.push(("Y_5 (10,3,0.4)", y.empirical, formula, y.standard_error));

    let mut summary = Vec::new();
    for (name, emp, analytic, se) in lines {
        let z = (emp - analytic) / se;
        ensure(z.abs() < 4.0, format!("{name}: empirical {emp} analytic {analytic} z {z:.2}"))?;
        summary.push(format!("{name} z={z:+.2}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 600.0, format!("took {secs:.0}s"))?;
    Ok(format!("{}, {secs:.1}s", summary.join(", ")))
}

/// `P[Binomial(b, p) >= 2]` by summing the mass from 2 upward, each term
/// built in log space.
fn tail_by_summation(b: u64, p: f64) -> f64 {
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let mut ln_choose = ((b as f64) * (b as f64 - 1.0) / 2.0).ln();
    let mut sum = 0.0;
    for i in 2..=b {
        sum += (ln_choose + i as f64 * lp + (b - i) as f64 * lq).exp();
        ln_choose += ((b - i) as f64).ln() - ((i + 1) as f64).ln();
    }
    sum
}

fn coverage_value() -> Outcome {
    let ctx = AnalyticContext::new(10, 3, 0.5, 0.1).unwrap();
    let f = ctx.coverage_probability(3, 0);
    ensure((f - 0.5).abs() <= 1e-12, format!("F(3,3,0.5) = {f}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let k = rng.random_range(2..=5usize);
        let size = rng.random_range(k..=30usize);
        let r = rng.random_range(0..=size / k);
        let s = size - r;
        let p = rng.random_range(0.01..0.99);
        let ctx = AnalyticContext::new(60, k, p, 0.1).unwrap();
        let b = (0..k - 1).fold(1u64, |acc, i| acc * (size - i) as u64 / (i as u64 + 1));
        let want = tail_by_summation(b, p);
        let got = ctx.coverage_probability(s, r);
        worst = worst.max((got - want).abs());
        ensure((got - want).abs() <= 1e-10, format!("k={k} s+r={size} p={p}: {got} vs {want}"))?;
    }
    Ok(format!("F(3,3,0.5) = {f}, max deviation over 20 points {worst:.1e}"))
}

fn threshold_scans() -> Outcome {
    let sx = compute_sx(&AnalyticContext::new(20, 3, 0.5, 0.1).unwrap()).unwrap().s_x;
    ensure(sx == 5, format!("s_x(20,3,0.5) = {sx}"))?;
    let rm = compute_rm(&AnalyticContext::new(6, 3, 0.5, 0.1).unwrap(), 3).unwrap().r_m;
    ensure(rm == 1, format!("r_M(6,3,0.5,3) = {rm}"))?;
    let ctx = AnalyticContext::new(10_000, 3, 0.05, 0.1).unwrap();
    let (sx, sz) = (compute_sx(&ctx).unwrap().s_x, compute_sz(&ctx).unwrap().s_z);
    ensure(sx == sz, format!("s_x {sx} != s_z {sz} at (1e4,3,0.05)"))?;
    Ok(format!("s_x(20,3,0.5)=5, r_M(6,3,0.5,3)=1, s_z=s_x={sx} at (1e4,3,0.05)"))
}

fn rm_predictor() -> Outcome {
    let mut parts = Vec::new();
    for n in [1_000usize, 10_000] {
        let p = (n as f64).powf(-1.2);
        let ctx = AnalyticContext::new(n, 3, p, 0.1).unwrap();
        let s = compute_sx(&ctx).unwrap().s_x;
        let rm = compute_rm(&ctx, s).unwrap();
        let dev = rm.predictor as i64 - rm.r_m as i64;
        ensure(dev.abs() <= 1, format!("n={n}: scan {} predictor {}", rm.r_m, rm.predictor))?;
        parts.push(format!("n={n} s={s} scan {} predictor {}", rm.r_m, rm.predictor));
    }
    Ok(parts.join("; "))
}

fn identities() -> Outcome {
    for k in 2..=6 {
        let domain = (k - 2) as f64;
        for x in [3.5, 10.0, 100.0, 1000.0] {
            let y = f_poly(f_inverse(x, k).unwrap(), k);
            ensure((y - x).abs() <= 1e-8 * x, format!("f(f^-1({x})) = {y}, k={k}"))?;
            if x > domain {
                let back = f_inverse(f_poly(x, k), k).unwrap();
                ensure((back - x).abs() <= 1e-8 * x.max(1.0), format!("f^-1(f({x})) = {back}, k={k}"))?;
            }
        }
    }
    for k in 2..=8u64 {
        for t in k..=1000 {
            ensure(check_binom_identity(t, k).unwrap(), format!("identity fails at t={t} k={k}"))?;
        }
    }
    let mut onsets = Vec::new();
    for k in 2..=5u64 {
        let sweep = lemma2_sweep(k, 0.1, 10_000).unwrap();
        let onset = sweep.onset.ok_or(format!("k={k}: no onset"))?;
        ensure(sweep.violations_after_onset.is_empty(), format!("k={k}: violations {:?}", sweep.violations_after_onset))?;
        onsets.push(format!("k={k} onset {onset}"));
    }
    Ok(format!("round trips to 1e-8, identity on k in [2,8] t in [k,1000], lemma sweep to 1e4: {}", onsets.join(", ")))
}

fn coupling_monotonicity() -> Outcome {
    let start = Instant::now();
    let mut c = cfg(Mode::Coupling, 40, 3, 0.15, 7, 500);
    c.p2 = Some(0.3);
    c.j = Some(2);
    let rep = run_coupling(&c).map_err(|e| e.to_string())?;
    let cs = rep.aggregate.coupling.as_ref().unwrap();
    ensure(rep.aggregate.completed == 500, format!("completed {}", rep.aggregate.completed))?;
    ensure(cs.monotonicity.violations == 0, format!("violations at {:?}", cs.monotonicity.violating_trials))?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 300.0, format!("took {secs:.0}s"))?;
    let o = cs.overlap.as_ref().ok_or("no overlap block")?;
    Ok(format!(
        "500 trials, 0 violations, {secs:.1}s; overlap a={} P[<=a]={:.3} P'[>=a]={:.3}",
        o.a, o.prob_at_most_a, o.prob_prime_at_least_a
    ))
}

/// `ell` and `ell_j` evaluated through logarithms.
fn ell_by_logs(n: f64, k: usize, j: usize, p: f64, eps: f64) -> (f64, f64) {
    let kf = k as f64;
    let jf = j as f64;
    let ln_fact = |m: usize| (1..=m).map(|i| (i as f64).ln()).sum::<f64>();
    let ln_d = n.ln() + p.ln() / (kf - 1.0);
    let ln_ell = -kf / 2.0 * n.ln() - (0.5 + 1.0 / (kf - 1.0)) * p.ln() + (ln_fact(k) + ln_d.ln()) / (kf - 1.0)
        - 3f64.ln();
    let ln_c = (jf + 1.0).ln() + ln_fact(j - 1) + (kf - 1.0).ln() + ln_fact(k - 1 - j);
    let ln_ell_j = (1.0 - 2f64.powf(-1.0 / jf) - eps).ln() + (1.0 - kf / 2.0 - (kf - 1.0) / jf) * n.ln()
        - (0.5 + 1.0 / jf) * p.ln()
        + (ln_c + ln_d.ln()) / jf;
    (ln_ell.exp(), ln_ell_j.exp())
}

fn anti_concentration_arithmetic() -> Outcome {
    let s = anti_schedule(100, 3, 2, 0.01, DEFAULT_SCHEDULE_EPSILON).unwrap();
    ensure(s.p_prime == 0.0101, format!("p' = {:e}", s.p_prime))?;
    ensure(s.z_bound == 100.0, format!("z_bound = {}", s.z_bound))?;
    let fixture = anti_schedule(1000, 3, 2, 10f64.powf(-2.2), DEFAULT_SCHEDULE_EPSILON).unwrap().ell;
    ensure((fixture - 0.00855931511268168).abs() < 1e-12, format!("ell fixture {fixture}"))?;
    let ks = ks_alpha_j(10_000, 4, 2, 1e-3).unwrap();
    ensure((ks - 2.493387204403665).abs() < 1e-12, format!("ks fixture {ks}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let k = rng.random_range(3..=6usize);
        let j = rng.random_range(1..k);
        let n = rng.random_range(50..100_000usize);
        let lo = -(k as f64 - 1.0) * (n as f64).ln() + (k as f64 - 1.0) * 0.5;
        let p = rng.random_range(lo..-0.01).exp();
        let got = anti_schedule(n, k, j, p, DEFAULT_SCHEDULE_EPSILON).map_err(|e| e.to_string())?;
        let (ell, ell_j) = ell_by_logs(n as f64, k, j, p, DEFAULT_SCHEDULE_EPSILON);
        for (a, b) in [(got.ell, ell), (got.ell_j, ell_j)] {
            let rel = (a - b).abs() / b.abs();
            worst = worst.max(rel);
            ensure(rel <= 1e-10, format!("n={n} k={k} j={j} p={p:e}: {a} vs {b}"))?;
        }
    }
    Ok(format!("p'=0.0101, z_bound=100, ell/ell_j vs log-form evaluation max rel dev {worst:.1e}"))
}

fn determinism() -> Outcome {
    let mut configs = Vec::new();
    let mut c = cfg(Mode::Concentration, 24, 3, 0.3, 41, 40);
    configs.push(c.clone());
    c.mode = Mode::Coupling;
    c.p2 = Some(0.5);
    configs.push(c);
    let mut c = cfg(Mode::ExpectationCheck, 9, 3, 0.4, 42, 300);
    c.s = Some(4);
    c.r = Some(1);
    configs.push(c);
    configs.push(cfg(Mode::Lemma1Fuzz, 8, 3, 0.5, 43, 200));
    for base in configs {
        let a = run(&base).map_err(|e| e.to_string())?;
        let b = run(&base).map_err(|e| e.to_string())?;
        let ja = a.without_timing().to_json().unwrap();
        ensure(ja == b.without_timing().to_json().unwrap(), format!("{:?}: reports differ", base.mode))?;
        let mut par = base.clone();
        par.parallelism = 4;
        let c4 = run(&par).map_err(|e| e.to_string())?;
        ensure(a.aggregate == c4.aggregate, format!("{:?}: aggregates differ across parallelism", base.mode))?;
        ensure(a.without_timing().records == c4.without_timing().records, "records differ across parallelism")?;
    }
    Ok("4 modes: byte-identical repeated reports, identical aggregates at parallelism 1 and 4".into())
}

fn concentration_demo() -> Outcome {
    let start = Instant::now();
    let mut c = cfg(Mode::Concentration, 60, 3, 0.5, 1, 200);
    c.parallelism = std::thread::available_parallelism().map_or(1, |n| n.get());
    let rep = run_concentration(&c).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1800), format!("took {:.0}s", elapsed.as_secs_f64()))?;
    let dist = rep.aggregate.alpha.as_ref().ok_or("no distribution")?;
    let w = rep.aggregate.window.as_ref().ok_or("no predicted window")?;
    Ok(format!(
        "distribution {:?}, window {:?}, window mass {:.3}, modal pair {:?} mass {:.3}, {:.1}s (diagnostic)",
        dist.counts,
        w.window,
        w.mass,
        dist.modal_pair,
        dist.modal_pair_mass,
        elapsed.as_secs_f64()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 lemma-1 equivalence", lemma1_equivalence),
        ("2 expectation exactness", expectation_exactness),
        ("3 coverage probability", coverage_value),
        ("4 threshold scans", threshold_scans),
        ("5 r_M closed-form predictor", rm_predictor),
        ("6 f inverse, binomial identity, lemma sweep", identities),
        ("7 coupling monotonicity", coupling_monotonicity),
        ("8 anti-concentration arithmetic", anti_concentration_arithmetic),
        ("9 determinism", determinism),
        ("10 concentration demo", concentration_demo),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
