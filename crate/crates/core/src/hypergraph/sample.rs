//! Sampling from the binomial model H(n, k, p).

use std::collections::HashSet;

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::combinadic::{next_colex, subset_count, unrank_into};
use super::{Hypergraph, HypergraphError};
use crate::rng;

/// Full Bernoulli sweep over all k-subsets is used while `C(n, k)` is at most this.
pub const ENUMERATION_CAP: u128 = 1 << 22;

/// Parameters of H(n, k, p) plus the master seed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub seed: u64,
}

impl ModelParams {
    pub fn new(n: usize, k: usize, p: f64, seed: u64) -> Result<Self, HypergraphError> {
        let params = Self { n, k, p, seed };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), HypergraphError> {
        if self.k < 2 || self.k > self.n {
            return Err(HypergraphError::BadModel { n: self.n, k: self.k });
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(HypergraphError::BadProbability(self.p));
        }
        subset_count(self.n, self.k)?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingStrategy {
    /// One counter-addressed uniform per k-subset, edge iff `u < p`.
    Enumerate,
    /// Edge count from Binomial(C(n,k), p), then that many distinct uniform ranks.
    EdgeCount,
}

impl SamplingStrategy {
    pub fn auto(n: usize, k: usize) -> Result<Self, HypergraphError> {
        Ok(if subset_count(n, k)? <= ENUMERATION_CAP { Self::Enumerate } else { Self::EdgeCount })
    }
}

/// Samples H(n, k, p), choosing the strategy from the size of `C(n, k)`.
pub fn sample_hnkp(params: &ModelParams) -> Result<Hypergraph, HypergraphError> {
    sample_hnkp_with(params, SamplingStrategy::auto(params.n, params.k)?)
}

/// Samples H(n, k, p) with an explicit strategy. Both strategies produce the
/// same distribution but different streams.
pub fn sample_hnkp_with(params: &ModelParams, strategy: SamplingStrategy) -> Result<Hypergraph, HypergraphError> {
    params.validate()?;
    match strategy {
        SamplingStrategy::Enumerate => sample_with_uniforms(params.n, params.k, params.p, params.seed),
        SamplingStrategy::EdgeCount => sample_by_edge_count(params),
    }
}

/// Includes the k-subset of colex rank `i` iff `uniform_at(seed, i) < p`.
///
/// With a shared seed this couples H(n,k,p1) and H(n,k,p2): for `p1 <= p2`
/// the first is a sub-hypergraph of the second.
pub fn sample_with_uniforms(n: usize, k: usize, p: f64, seed: u64) -> Result<Hypergraph, HypergraphError> {
    if k < 2 || k > n {
        return Err(HypergraphError::BadModel { n, k });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(HypergraphError::BadProbability(p));
    }
    let total = subset_count(n, k)?;
    if total > ENUMERATION_CAP {
        return Err(HypergraphError::Capacity { n, k });
    }
    let mut edges = Vec::new();
    let mut subset: Vec<usize> = (0..k).collect();
    let mut rank = 0u64;
    loop {
        if rng::uniform_at(seed, rank) < p {
            edges.push(subset.clone().into_boxed_slice());
        }
        rank += 1;
        if !next_colex(&mut subset, n) {
            break;
        }
    }
    Ok(Hypergraph::from_sorted_edges(n, k, edges))
}

fn sample_by_edge_count(params: &ModelParams) -> Result<Hypergraph, HypergraphError> {
    let (n, k) = (params.n, params.k);
    let total = subset_count(n, k)?;
    let total64 = u64::try_from(total).map_err(|_| HypergraphError::Capacity { n, k })?;
    let mut rng = rng::stream(params.seed);
    let m = Binomial::new(total64, params.p)
        .map_err(|_| HypergraphError::BadProbability(params.p))?
        .sample(&mut rng);
    // Draw the smaller of the edge set and its complement; both are uniform
    // m-subsets of the rank space.
    let complement = m > total64 / 2;
    let draws = if complement { total64 - m } else { m };
    let mut chosen = HashSet::with_capacity(draws as usize);
    while (chosen.len() as u64) < draws {
        chosen.insert(rng.random_range(0..total64));
    }
    let mut buf = vec![0usize; k];
    let mut edges = Vec::with_capacity(m as usize);
    let mut push = |rank: u64, edges: &mut Vec<Box<[usize]>>| {
        unrank_into(n, rank as u128, &mut buf);
        edges.push(buf.clone().into_boxed_slice());
    };
    if complement {
        for rank in (0..total64).filter(|r| !chosen.contains(r)) {
            push(rank, &mut edges);
        }
    } else {
        for &rank in &chosen {
            push(rank, &mut edges);
        }
    }
    Ok(Hypergraph::from_sorted_edges(n, k, edges))
}
