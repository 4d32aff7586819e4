//! Exact weak and strong independence numbers of a sampled hypergraph.

use hyperalpha::hypergraph::{sample_hnkp, ModelParams};
use hyperalpha::solver::{count_independent_sets, is_j_independent, solve_alpha, SolveOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = sample_hnkp(&ModelParams::new(40, 3, 0.15, 2024)?)?;
    println!("H(40, 3, 0.15): {} edges", h.edge_count());

    for j in (1..h.k()).rev() {
        let sol = solve_alpha(&h, j, &SolveOptions::default())?;
        assert!(is_j_independent(&h, &sol.witness, j));
        println!("alpha_{j} = {:2}  witness {:?}  ({} nodes)", sol.alpha, sol.witness, sol.nodes);
    }

    let weak = solve_alpha(&h, 2, &SolveOptions::default())?.alpha;
    println!("independent sets of size alpha: {}", count_independent_sets(&h, weak, 2)?);
    Ok(())
}
