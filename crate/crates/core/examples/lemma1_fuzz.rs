//! hat_alpha = alpha on every 3-uniform hypergraph on 5 vertices and on random samples.

use hyperalpha::experiments::{run_lemma1_exhaustive, run_lemma1_fuzz, ExperimentConfig, Mode};
use hyperalpha::hypergraph::ModelParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ex = run_lemma1_exhaustive(5, 3)?;
    println!("exhaustive n=5 k=3: {} graphs, {} violations", ex.graphs, ex.violating_graphs.len());

    for (n, k, p) in [(8, 3, 0.2), (8, 3, 0.5), (8, 3, 0.8), (7, 4, 0.3)] {
        let cfg = ExperimentConfig::new(Mode::Lemma1Fuzz, ModelParams::new(n, k, p, 99)?, 2000);
        let rep = run_lemma1_fuzz(&cfg)?;
        println!("n={n} k={k} p={p}: {} trials, {} violations", rep.aggregate.completed, rep.gated_violations());
    }
    Ok(())
}
