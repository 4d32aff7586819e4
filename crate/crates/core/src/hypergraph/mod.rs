//! k-uniform hypergraphs: representation, random generation and file I/O.

mod combinadic;
mod io;
mod sample;

pub use combinadic::{binomial, next_colex, rank_ksubset, subset_count, unrank_ksubset, ColexSubsets};
pub use io::{format_hypergraph, parse_hypergraph, read_hypergraph, write_hypergraph, ParseError, ParseErrorKind};
pub use sample::{
    sample_hnkp, sample_hnkp_with, sample_with_uniforms, ModelParams, SamplingStrategy, ENUMERATION_CAP,
};

use std::collections::BTreeSet;

use thiserror::Error;

/// Largest vertex count for which bitmask edge representations are built.
/// The exact solvers require it.
pub const VERTEX_CAP: usize = 128;

/// Bit set over at most [`VERTEX_CAP`] vertices.
pub type Mask = u128;

#[derive(Debug, Error)]
pub enum HypergraphError {
    #[error("uniformity k={k} must satisfy 2 <= k")]
    BadUniformity { k: usize },
    #[error("model parameters require 2 <= k <= n, got n={n}, k={k}")]
    BadModel { n: usize, k: usize },
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("C({n}, {k}) does not fit in 128 bits")]
    Capacity { n: usize, k: usize },
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("subset is not strictly increasing")]
    NotStrictlyIncreasing,
    #[error("edge has {found} vertices, expected {k}")]
    WrongArity { found: usize, k: usize },
    #[error("edge contains a repeated vertex")]
    RepeatedVertex,
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("rank {rank} out of range (total {total})")]
    RankOutOfRange { rank: u128, total: u128 },
    #[error("n={n} exceeds the bitmask vertex cap of {VERTEX_CAP}")]
    VertexCapExceeded { n: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Immutable k-uniform hypergraph on vertices `0..n`.
///
/// Edges are stored sorted ascending and the edge list is kept in
/// lexicographic order, so two hypergraphs with the same edge set compare
/// equal. A per-vertex incidence index and, for `n <= VERTEX_CAP`, one
/// bitmask per edge are built at construction.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Box<[usize]>>,
    incidence: Vec<Vec<usize>>,
    masks: Vec<Mask>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Builds a hypergraph, validating and canonicalizing every edge.
    /// Each edge must have exactly `k` distinct in-range vertices (any order);
    /// duplicate edges are an error.
    pub fn new<I, E>(n: usize, k: usize, edges: I) -> Result<Self, HypergraphError>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if k < 2 {
            return Err(HypergraphError::BadUniformity { k });
        }
        let mut set = BTreeSet::new();
        for e in edges {
            let mut e = e.as_ref().to_vec();
            if e.len() != k {
                return Err(HypergraphError::WrongArity { found: e.len(), k });
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex);
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { vertex: v, n });
            }
            if !set.insert(e.clone()) {
                return Err(HypergraphError::DuplicateEdge(e));
            }
        }
        Ok(Self::from_canonical(n, k, set.into_iter().map(Vec::into_boxed_slice).collect()))
    }

    /// `edges` must already be sorted, deduplicated and in lexicographic order.
    pub(crate) fn from_canonical(n: usize, k: usize, edges: Vec<Box<[usize]>>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut incidence = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            for &v in e.iter() {
                incidence[v].push(id);
            }
        }
        let masks = if n <= VERTEX_CAP {
            edges.iter().map(|e| e.iter().fold(0, |m: Mask, &v| m | (1u128 << v))).collect()
        } else {
            Vec::new()
        };
        Self { n, k, edges, incidence, masks }
    }

    /// Builds from sorted edges in arbitrary order (used by the samplers).
    pub(crate) fn from_sorted_edges(n: usize, k: usize, mut edges: Vec<Box<[usize]>>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Self::from_canonical(n, k, edges)
    }

    /// Hypergraph with no edges.
    pub fn empty(n: usize, k: usize) -> Result<Self, HypergraphError> {
        Self::new(n, k, std::iter::empty::<Vec<usize>>())
    }

    /// Complete k-uniform hypergraph on `n` vertices.
    pub fn complete(n: usize, k: usize) -> Result<Self, HypergraphError> {
        if k < 2 {
            return Err(HypergraphError::BadUniformity { k });
        }
        subset_count(n, k)?;
        Ok(Self::from_sorted_edges(n, k, ColexSubsets::new(n, k).map(Vec::into_boxed_slice).collect()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.edges.iter().map(|e| &e[..])
    }

    pub fn edge(&self, id: usize) -> &[usize] {
        &self.edges[id]
    }

    /// Ids of edges containing `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search_by(|x| x[..].cmp(&e[..])).is_ok()
    }

    /// Edge bitmasks; fails above [`VERTEX_CAP`].
    pub fn masks(&self) -> Result<&[Mask], HypergraphError> {
        if self.n > VERTEX_CAP {
            return Err(HypergraphError::VertexCapExceeded { n: self.n });
        }
        Ok(&self.masks)
    }

    /// Returns a copy with one more edge; errors if it is already present.
    pub fn with_edge(&self, edge: &[usize]) -> Result<Self, HypergraphError> {
        Self::new(self.n, self.k, self.edges().chain(std::iter::once(edge)))
    }

    /// Sub-hypergraph induced on `subset`, relabeled to `0..|subset|`.
    ///
    /// Vertices are relabeled in ascending order of their original ids and
    /// the mapping `new -> old` is returned with the graph.
    pub fn induced(&self, subset: &[usize]) -> Result<Induced, HypergraphError> {
        let mut mapping = subset.to_vec();
        mapping.sort_unstable();
        mapping.dedup();
        let mut relabel = vec![usize::MAX; self.n];
        for (new, &old) in mapping.iter().enumerate() {
            if old >= self.n {
                return Err(HypergraphError::VertexOutOfRange { vertex: old, n: self.n });
            }
            relabel[old] = new;
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            if e.iter().all(|&v| relabel[v] != usize::MAX) {
                // relabel is monotone, so the edge stays sorted
                edges.push(e.iter().map(|&v| relabel[v]).collect::<Box<[usize]>>());
            }
        }
        let graph = Self::from_sorted_edges(mapping.len(), self.k, edges);
        Ok(Induced { graph, mapping })
    }

    /// Rebuilds the incidence index from the edge list.
    pub fn rebuild_incidence(&self) -> Vec<Vec<usize>> {
        Self::from_canonical(self.n, self.k, self.edges.clone()).incidence
    }
}

/// Result of [`Hypergraph::induced`].
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Hypergraph,
    /// `mapping[new] = old` vertex id.
    pub mapping: Vec<usize>,
}

/// Bitmask of a vertex list.
pub fn mask_of(vertices: &[usize]) -> Mask {
    vertices.iter().fold(0, |m: Mask, &v| m | (1u128 << v))
}

/// Ascending vertex list of a bitmask.
pub fn vertices_of(mut mask: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}
