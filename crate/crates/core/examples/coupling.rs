//! Shared-uniform coupling: pathwise monotonicity and the overlap between
//! alpha at p and at the next schedule point p'.

use hyperalpha::experiments::{run_coupling, ExperimentConfig, Mode};
use hyperalpha::hypergraph::ModelParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = ExperimentConfig::new(Mode::Coupling, ModelParams::new(40, 3, 0.15, 3)?, 200);
    cfg.p2 = Some(0.3);
    let rep = run_coupling(&cfg)?;
    let c = rep.aggregate.coupling.as_ref().unwrap();
    println!("monotonicity violations: {}", c.monotonicity.violations);
    if let Some(o) = &c.overlap {
        println!("p = {}, p' = {:.6}, a = {}", o.p, o.p_prime, o.a);
        println!("P[alpha(H_p) <= a]   = {:.3}  95% CI {:.3?}", o.prob_at_most_a, o.prob_at_most_a_ci);
        println!("P[alpha(H_p') >= a]  = {:.3}  95% CI {:.3?}", o.prob_prime_at_least_a, o.prob_prime_at_least_a_ci);
        println!("both above 1/20: {}", o.both_exceed_one_twentieth);
    }
    Ok(())
}
