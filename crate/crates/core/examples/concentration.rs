//! Empirical distribution of alpha against the predicted window {s_z, s_z + 1}.
//!
//!     cargo run --release --example concentration -- 200

use hyperalpha::experiments::{run_concentration, ExperimentConfig, Mode};
use hyperalpha::hypergraph::ModelParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trials = std::env::args().nth(1).map_or(Ok(200), |a| a.parse())?;
    let mut cfg = ExperimentConfig::new(Mode::Concentration, ModelParams::new(60, 3, 0.5, 1)?, trials);
    cfg.parallelism = std::thread::available_parallelism().map_or(1, |n| n.get());

    let rep = run_concentration(&cfg)?;
    let dist = rep.aggregate.alpha.as_ref().expect("no completed trials");
    for (v, c) in &dist.counts {
        println!("alpha = {v:3}: {c:5}  {}", "#".repeat((60 * c / dist.samples) as usize));
    }
    println!("mean {:.3}, variance {:.3}", dist.mean, dist.variance);
    if let Some(w) = &rep.aggregate.window {
        println!("predicted window {:?}, empirical mass {:.3}", w.window, w.mass);
    }
    Ok(())
}
