//! Independence numbers of random k-uniform hypergraphs: sampling, exact
//! solvers, augmented independent sets, analytic thresholds and Monte Carlo
//! experiments.

pub mod analytics;
pub mod augmented;
pub mod hypergraph;
pub mod rng;
pub mod solver;
pub mod experiments;
pub mod cli;
