//! Expectation thresholds, the predicted two-point window and the gap regime
//! across a range of densities.

use hyperalpha::analytics::{predict, AnalyticContext, GapRegime, DEFAULT_EPSILON};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 10_000;
    println!("{:>9} {:>6} {:>6} {:>4} {:>10} {:>9}", "p", "s_x", "s_z", "r_z", "asympt", "regime");
    for p in [0.3, 0.05, 1e-3, 2e-4, 5e-5, 1e-5] {
        let rep = predict(&AnalyticContext::new(n, 3, p, DEFAULT_EPSILON)?)?;
        let regime = match rep.gap_regime {
            GapRegime::Dense { .. } => "dense",
            GapRegime::Critical { .. } => "critical",
            GapRegime::Sparse { .. } => "sparse",
        };
        let asym = rep.asymptotic_alpha.map_or("-".to_string(), |a| format!("{a:.2}"));
        println!("{p:>9} {:>6} {:>6} {:>4} {asym:>10} {regime:>9}", rep.s_x, rep.s_z, rep.r_z);
    }
    Ok(())
}
