//! Augmented independent sets on a small hypergraph and their k^r independent subsets.

use hyperalpha::augmented::{enumerate_augmented, hat_alpha, is_augmented};
use hyperalpha::hypergraph::Hypergraph;
use hyperalpha::solver::alpha_j;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = Hypergraph::new(5, 3, [[0, 1, 2], [0, 3, 4], [1, 3, 4]])?;
    println!("{h}");

    let t = is_augmented(&h, &[0, 1, 2, 3])?.expect("augmented");
    println!("T = {:?}: order {}, matching {:?}", t.vertices, t.order, t.matching);
    for s in t.independent_subsets() {
        println!("  independent subset {s:?}");
    }

    let hat = hat_alpha(&h)?;
    println!("hat_alpha = {hat}, alpha = {}", alpha_j(&h, 2)?);
    for set in enumerate_augmented(&h, hat)? {
        println!("  order {hat}: {:?} (r = {})", set.vertices, set.r);
    }
    Ok(())
}
