//! Monte Carlo means of X_s, Y_s and Z_{s,r} against their closed forms.

use hyperalpha::experiments::{run_expectation_check, ExperimentConfig, Mode};
use hyperalpha::hypergraph::ModelParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = ExperimentConfig::new(Mode::ExpectationCheck, ModelParams::new(10, 3, 0.5, 5)?, 20_000);
    cfg.s = Some(4);
    cfg.r = Some(1);
    let rep = run_expectation_check(&cfg)?;
    for c in &rep.aggregate.comparisons {
        let z = c.z.map_or("-".into(), |z| format!("{z:+.2}"));
        println!("{:6} analytic {:10.5}  empirical {:10.5} ± {:.5}  z {z}", c.quantity, c.analytic, c.empirical, c.standard_error);
    }
    Ok(())
}
